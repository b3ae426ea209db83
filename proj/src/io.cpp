#include "levikit/io.hpp"

#include <cmath>
#include <cstdlib>
#include <istream>
#include <sstream>

#include "levikit/error.hpp"

namespace levikit {

namespace {

[[noreturn]] void bad(const std::string& what, const std::string& ctx = {}) {
  throw Error(ErrorCode::InvalidInput, what, ctx);
}

template <class T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("field '") + key + "' has the wrong type", e.what());
  }
}

Sign sign_from(const Json& j) {
  const auto s = j.get<std::string>();
  if (s == "+") return Sign::Plus;
  if (s == "-") return Sign::Minus;
  bad("sign must be \"+\" or \"-\"", s);
}

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<int> optional_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<int>();
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    bad("complex numbers are written as [re, im]", j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

LocalJet jet_from_json(const Json& j) {
  if (!j.is_object()) bad("jet must be an object with A, B, C");
  for (const char* k : {"A", "B", "C"})
    if (!j.contains(k)) bad(std::string("jet is missing ") + k);
  return LocalJet{complex_from_json(j["A"]), complex_from_json(j["B"]), complex_from_json(j["C"])};
}

Json to_json(const LocalJet& jet) { return Json{{"A", to_json(jet.A)}, {"B", to_json(jet.B)}, {"C", to_json(jet.C)}}; }

Json to_json(const CanonicalJet& c) { return Json{{"gamma", c.gamma}, {"kind", std::string(to_string(c.kind))}}; }

Json to_json(const GammaReport& r) {
  Json j{{"gamma", r.gamma},
         {"a", r.a},
         {"x_root", r.x_root},
         {"other_root", r.other_root},
         {"nu", std::isfinite(r.nu) ? Json(r.nu) : Json(r.nu > 0 ? "inf" : "-inf")},
         {"angle", r.angle},
         {"angle_over_pi", r.angle / kPi},
         {"fixed_vector_residual", r.fixed_vector_residual},
         {"diagonal_scale", r.diagonal_scale}};
  j["rational"] = r.rational ? Json::array({r.rational->first, r.rational->second}) : Json(nullptr);
  j["dihedral_order"] = r.dihedral_order ? Json(*r.dihedral_order) : Json(nullptr);
  j["in_Lambda"] = r.in_lambda;
  return j;
}

SphereInventory inventory_from_json(const Json& j) {
  SphereInventory inv;
  inv.e_plus = get<int>(j, "e_plus");
  inv.e_minus = get<int>(j, "e_minus");
  inv.h_plus = get<int>(j, "h_plus");
  inv.h_minus = get<int>(j, "h_minus");
  inv.chern_value = j.contains("chern_value") ? get<int>(j, "chern_value") : 0;
  return inv;
}

Json to_json(const SphereInventory& inv) {
  return Json{{"e_plus", inv.e_plus}, {"e_minus", inv.e_minus}, {"h_plus", inv.h_plus},
              {"h_minus", inv.h_minus}, {"chern_value", inv.chern_value}};
}

ChainGraph chain_from_json(const Json& j) {
  ChainGraph c;
  c.id = get<int>(j, "id");
  try {
    for (const auto& d : j.at("discs")) {
      DiscRecord r;
      r.id = d.at("id").get<int>();
      r.sign = d.contains("sign") ? sign_from(d["sign"]) : Sign::Plus;
      if (d.contains("family_origin")) r.family_origin = d["family_origin"].get<std::vector<int>>();
      r.maslov = d.value("maslov", 0);
      c.discs.push_back(r);
    }
    for (const auto& p : j.at("points")) {
      PointRecord r;
      r.id = p.at("id").get<int>();
      r.sign = p.contains("sign") ? sign_from(p["sign"]) : Sign::Plus;
      r.slot_a = optional_from(p.value("slot_a", Json(nullptr)));
      r.slot_b = optional_from(p.value("slot_b", Json(nullptr)));
      c.points.push_back(r);
    }
  } catch (const nlohmann::json::exception& e) {
    bad("malformed chain", e.what());
  }
  return c;
}

Json to_json(const ChainGraph& c) {
  Json discs = Json::array(), points = Json::array();
  for (const auto& d : c.discs) {
    discs.push_back(Json{{"id", d.id}, {"sign", std::string(to_string(d.sign))},
                         {"family_origin", d.family_origin}, {"maslov", d.maslov}});
  }
  for (const auto& p : c.points) {
    points.push_back(Json{{"id", p.id}, {"sign", std::string(to_string(p.sign))},
                          {"slot_a", optional_int(p.slot_a)}, {"slot_b", optional_int(p.slot_b)}});
  }
  return Json{{"id", c.id}, {"discs", discs}, {"points", points}};
}

Json to_json(const FillingEvent& e) {
  return Json{{"seq", e.seq},
              {"kind", std::string(to_string(e.kind))},
              {"chain", e.chain},
              {"point", e.point},
              {"merged", Json::array({e.merged.first, e.merged.second})},
              {"new_family", e.new_family},
              {"loop_index", e.loop_index},
              {"hyperbolic_after", e.hyperbolic_after},
              {"families_after", e.families_after},
              {"epsilon_note", e.epsilon_note}};
}

Json to_json(const FillingTrace& t) {
  Json rounds = Json::array();
  for (const auto& r : t.rounds) {
    Json chains = Json::array(), events = Json::array();
    for (const auto& c : r.chains) chains.push_back(to_json(c));
    for (const auto& e : r.events) events.push_back(to_json(e));
    rounds.push_back(Json{{"round", r.round}, {"chains", chains}, {"events", events}});
  }
  return Json{{"seed", t.seed},
              {"inventory", to_json(t.inventory)},
              {"rounds", rounds},
              {"terminal", Json{{"family", t.terminal.family},
                                {"family_origin", t.terminal.family_origin},
                                {"families", t.terminal.families},
                                {"negative_elliptic", t.terminal.negative_elliptic}}}};
}

FillingTrace trace_from_json(const Json& j) {
  FillingTrace t;
  try {
    t.seed = j.at("seed").get<std::uint64_t>();
    t.inventory = inventory_from_json(j.at("inventory"));
    for (const auto& r : j.at("rounds")) {
      RoundRecord rec;
      rec.round = r.at("round").get<int>();
      for (const auto& c : r.at("chains")) rec.chains.push_back(chain_from_json(c));
      for (const auto& e : r.at("events")) {
        FillingEvent ev;
        ev.seq = e.at("seq").get<int>();
        const auto kind = e.at("kind").get<std::string>();
        if (kind != "glue" && kind != "pass_through") bad("unknown event kind", kind);
        ev.kind = kind == "glue" ? EventKind::Glue : EventKind::PassThrough;
        ev.chain = e.at("chain").get<int>();
        ev.point = e.at("point").get<int>();
        ev.merged = {e.at("merged").at(0).get<int>(), e.at("merged").at(1).get<int>()};
        ev.new_family = e.at("new_family").get<int>();
        ev.loop_index = e.at("loop_index").get<int>();
        ev.hyperbolic_after = e.at("hyperbolic_after").get<int>();
        ev.families_after = e.at("families_after").get<int>();
        ev.epsilon_note = e.value("epsilon_note", std::string{});
        rec.events.push_back(ev);
      }
      t.rounds.push_back(std::move(rec));
    }
    const auto& term = j.at("terminal");
    t.terminal.family = term.at("family").get<int>();
    t.terminal.family_origin = term.value("family_origin", std::vector<int>{});
    t.terminal.families = term.at("families").get<int>();
    t.terminal.negative_elliptic = term.value("negative_elliptic", std::vector<int>{});
  } catch (const nlohmann::json::exception& e) {
    bad("malformed trace", e.what());
  }
  return t;
}

Json to_json(const PuiseuxSeries& s) {
  Json terms = Json::array();
  for (const auto& [k, c] : s.coeffs) terms.push_back(Json{{"k", k}, {"coeff", to_json(c)}});
  return Json{{"m", s.m},
              {"leading_k", s.leading_k()},
              {"terms", terms},
              {"residual", s.residual},
              {"leading_term_valid", validate_leading_term(s)}};
}

Json to_json(const LemmaReport& r) {
  Json ex = Json::array();
  for (const auto& c : r.examples) ex.push_back(to_json(c));
  return Json{{"k_max", r.k_max},
              {"chains_checked", r.chains_checked},
              {"counterexamples", r.counterexamples},
              {"cycle_rank_mismatches", r.cycle_rank_mismatches},
              {"examples", ex}};
}

FrameLoop frames_from_json(const Json& j) {
  FrameLoop loop;
  if (!j.is_object() || !j.contains("frames") || !j["frames"].is_array()) bad("expected {\"frames\": [...]}");
  for (const auto& f : j["frames"]) {
    const int n = f.value("n", 1);
    const auto& m = f.at("m");
    if (n == 1 && m.size() == 1) {
      loop.frames.push_back(Frame::scalar(complex_from_json(m[0])));
    } else if (n == 2 && m.size() == 4) {
      loop.frames.push_back(Frame::matrix(complex_from_json(m[0]), complex_from_json(m[1]),
                                          complex_from_json(m[2]), complex_from_json(m[3])));
    } else {
      bad("frame must have n = 1 with 1 entry or n = 2 with 4 entries", f.dump());
    }
  }
  return loop;
}

Json error_json(const Error& e) {
  return Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}, {"context", e.context()}};
}

std::vector<std::vector<double>> read_csv(std::istream& in, std::size_t columns) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || cell.find_first_not_of(" \t", static_cast<std::size_t>(end - cell.c_str())) != std::string::npos) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (rows.empty() && lineno == 1) continue;  // header
      bad("non-numeric CSV field", "line " + std::to_string(lineno));
    }
    if (row.size() != columns) {
      bad("wrong number of CSV columns", "line " + std::to_string(lineno) + " expected " + std::to_string(columns));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

SampledLoop loop_from_csv(std::istream& in) {
  SampledLoop loop;
  for (const auto& r : read_csv(in, 2)) loop.samples.emplace_back(r[0], r[1]);
  return loop;
}

std::vector<std::pair<Complex, Complex>> samples_from_csv(std::istream& in) {
  std::vector<std::pair<Complex, Complex>> out;
  for (const auto& r : read_csv(in, 4)) out.emplace_back(Complex(r[0], r[1]), Complex(r[2], r[3]));
  return out;
}

}  // namespace levikit
