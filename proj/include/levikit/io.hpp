#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "levikit/asymptotics.hpp"
#include "levikit/chains.hpp"
#include "levikit/good_gamma.hpp"
#include "levikit/index_calculus.hpp"
#include "levikit/jet_normal.hpp"

namespace levikit {

class Error;

using Json = nlohmann::ordered_json;

// Complex numbers are written as [re, im].
Json to_json(Complex z);
Complex complex_from_json(const Json& j);

LocalJet jet_from_json(const Json& j);
Json to_json(const LocalJet& jet);
Json to_json(const CanonicalJet& c);

Json to_json(const GammaReport& r);

SphereInventory inventory_from_json(const Json& j);
Json to_json(const SphereInventory& inv);

ChainGraph chain_from_json(const Json& j);
Json to_json(const ChainGraph& c);

Json to_json(const FillingEvent& e);
Json to_json(const FillingTrace& t);
FillingTrace trace_from_json(const Json& j);

Json to_json(const PuiseuxSeries& s);

Json to_json(const LemmaReport& r);

// {"frames": [{"n": 1, "m": [[re, im]]}, {"n": 2, "m": [[re, im] x 4]}]}
FrameLoop frames_from_json(const Json& j);

// {"code": ..., "message": ..., "context": ...}
Json error_json(const Error& e);

// Numeric CSV with an optional header line; every row must have `columns`
// fields. Throws InvalidInput on malformed rows.
std::vector<std::vector<double>> read_csv(std::istream& in, std::size_t columns);

SampledLoop loop_from_csv(std::istream& in);
std::vector<std::pair<Complex, Complex>> samples_from_csv(std::istream& in);

}  // namespace levikit
