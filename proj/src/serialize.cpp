#include "fcone/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace fcone {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view text, const char* what) {
  text = trim(text);
  if (text.empty() || text.size() > 9 ||
      !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument(std::string("malformed ") + what + ": '" + std::string(text) + "'");
  }
  return std::stoi(std::string(text));
}

int variable_index(std::string_view text) {
  text = trim(text);
  if (!text.empty() && (text.front() == 'a' || text.front() == 'A')) text.remove_prefix(1);
  return parse_int(text, "coefficient index");
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int require_int(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) throw std::invalid_argument(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("rational must be a \"p/q\" string or an integer, got " + j.dump());
}

Json to_json(const MDivisor& h) {
  Json out;
  out["m"] = h.marked_points();
  Json psi = Json::object();
  Json delta = Json::object();
  for (const auto& [key, q] : h.terms()) {
    if (key.size() == 1) {
      psi[std::to_string(key.min_label())] = to_string(q);
    } else {
      delta[to_string(key)] = to_string(q);
    }
  }
  out["psi"] = std::move(psi);
  out["delta"] = std::move(delta);
  return out;
}

MDivisor mdivisor_from_json(const Json& j) {
  MDivisor h(require_int(j, "m"));
  const int m = h.marked_points();
  if (j.contains("psi")) {
    for (const auto& [label, q] : j.at("psi").items()) {
      h.add(Subset::singleton(m, parse_int(label, "label")), rational_from_json(q));
    }
  }
  if (j.contains("delta")) {
    for (const auto& [key, q] : j.at("delta").items()) h.add(parse_subset(key, m), rational_from_json(q));
  }
  return h;
}

Json to_json(const KDivisor& h) {
  Json out;
  out["n"] = h.marked_points();
  Json l = Json::object();
  for (const auto& [i, q] : h.l_terms()) l[std::to_string(i)] = to_string(q);
  Json b = Json::object();
  for (const auto& [s, q] : h.b_terms()) b[to_string(s)] = to_string(q);
  out["L"] = std::move(l);
  out["B"] = std::move(b);
  return out;
}

KDivisor kdivisor_from_json(const Json& j) {
  const int n = require_int(j, "n");
  KDivisor h(n);
  if (j.contains("K")) {
    if (!j.at("K").is_boolean()) throw std::invalid_argument("field \"K\" must be a boolean");
    if (j.at("K").get<bool>()) h += canonical_class(n);
  }
  if (j.contains("a")) {
    BoundaryCombo combo{n, {}};
    for (const auto& [s, q] : j.at("a").items()) combo.a[variable_index(s)] = rational_from_json(q);
    h += k_build(n, {}, combo);
  }
  if (j.contains("L")) {
    for (const auto& [i, q] : j.at("L").items()) h.add_l(parse_int(i, "label"), rational_from_json(q));
  }
  if (j.contains("B")) {
    for (const auto& [key, q] : j.at("B").items()) h.add_b(parse_subset(key, n), rational_from_json(q));
  }
  return h;
}

Json to_json(const BoundaryCombo& combo) {
  Json out = Json::object();
  for (const auto& [s, q] : combo.a) out[std::to_string(s)] = to_string(q);
  return out;
}

Json to_json(const LinearForm& f) {
  Json coeffs = Json::object();
  for (const auto& [v, q] : f.coefficients) coeffs[std::to_string(v)] = to_string(q);
  return Json{{"constant", to_string(f.constant)},
              {"coefficients", std::move(coeffs)},
              {"relation", f.strict() ? "<0" : "<=0"},
              {"text", to_string(f)}};
}

LinearForm linear_form_from_json(const Json& j) {
  LinearForm f;
  f.constant = rational_from_json(require(j, "constant"));
  for (const auto& [v, q] : require(j, "coefficients").items()) f.coefficients[variable_index(v)] = rational_from_json(q);
  const auto rel = require(j, "relation").get<std::string>();
  if (rel == "<0") {
    f.relation = Relation::StrictlyNegative;
  } else if (rel == "<=0") {
    f.relation = Relation::NonPositive;
  } else {
    throw std::invalid_argument("unknown relation \"" + rel + "\"");
  }
  f.normalize_zeros();
  return f;
}

Json to_json(const FeasibilityResult& r) {
  Json out;
  out["status"] = r.feasible() ? "feasible" : "infeasible";
  if (r.feasible()) {
    Json point = Json::object();
    for (const auto& [v, q] : r.point) point[std::to_string(v)] = to_string(q);
    out["point"] = std::move(point);
  } else {
    Json mult = Json::array();
    for (const auto& m : r.certificate) mult.push_back(Json{{"form", m.form}, {"lambda", to_string(m.lambda)}});
    out["multipliers"] = std::move(mult);
  }
  Json forms = Json::array();
  for (const auto& f : r.system) forms.push_back(to_json(f));
  out["forms"] = std::move(forms);
  return out;
}

FeasibilityResult feasibility_from_json(const Json& j) {
  FeasibilityResult r;
  const auto status = require(j, "status").get<std::string>();
  for (const auto& f : require(j, "forms")) r.system.push_back(linear_form_from_json(f));
  if (status == "feasible") {
    r.status = FeasibilityStatus::Feasible;
    for (const auto& [v, q] : require(j, "point").items()) r.point[variable_index(v)] = rational_from_json(q);
  } else if (status == "infeasible") {
    r.status = FeasibilityStatus::Infeasible;
    for (const auto& m : require(j, "multipliers")) {
      r.certificate.push_back(Multiplier{m.at("form").get<std::size_t>(), rational_from_json(m.at("lambda"))});
    }
  } else {
    throw std::invalid_argument("unknown status \"" + status + "\"");
  }
  return r;
}

Json to_json(const FValue& v) {
  return Json{{"partition", to_string(v.partition)}, {"value", to_string(v.value)}};
}

Json to_json(const AmpDecision& d) {
  Json out;
  out["verdict"] = to_string(d.verdict);
  out["sense"] = d.sense == Sense::StrictlyPositive ? "positive" : "negative";
  out["strict"] = d.strict;
  out["curves"] = d.curves_checked;
  out["min"] = to_string(d.min_value);
  out["max"] = to_string(d.max_value);
  if (d.witness) out["witness"] = to_json(*d.witness);
  if (!d.violations.empty()) {
    Json all = Json::array();
    for (const auto& v : d.violations) all.push_back(to_json(v));
    out["violations"] = std::move(all);
  }
  return out;
}

Json to_json(const ChsDecision& d) {
  Json out;
  out["verdict"] = to_string(d.verdict);
  out["sense"] = d.sense == AmpleSense::Ample ? "ample" : "anti-ample";
  out["alpha"] = to_json(d.alpha);
  Json beta = Json::object();
  for (const auto& b : d.beta) beta[std::to_string(b.i)] = to_string(b.degree);
  out["beta"] = std::move(beta);
  if (d.failing_beta) out["failing_beta"] = *d.failing_beta;
  return out;
}

Json to_json(const WitnessReport& r) {
  Json out;
  out["n"] = r.n;
  out["combo"] = to_json(r.combo);
  out["verdict"] = to_string(r.verdict);
  if (!r.reason.empty()) out["reason"] = r.reason;
  out["f_min"] = to_string(r.f_min);
  out["f_max"] = to_string(r.f_max);
  out["f_count"] = r.f_count;
  out["beta_degree"] = to_string(r.beta_degree);
  out["klt_note"] = r.klt_note;
  out["certificate"] = to_json(r.decision);
  return out;
}

Json to_json(const Constraint& c) {
  Json out = to_json(c.form);
  out["kind"] = c.kind == Constraint::Kind::Beta ? "beta" : "f-curve";
  if (c.partition) out["partition"] = to_string(*c.partition);
  if (c.shape) out["shape"] = to_string(*c.shape);
  return out;
}

Json to_json(const DivisorCorrespondence& c) {
  Json pairs = Json::array();
  for (const auto& p : c.pairs) {
    pairs.push_back(Json{{"S", to_string(p.target)},
                         {"delta", to_string(canonical_key(p.source, KeyMode::ComplementIdentified))},
                         {"B", to_string(p.target)}});
  }
  return Json{{"n", c.n}, {"pairs", std::move(pairs)}};
}

std::map<int, Rational> parse_combo_spec(std::string_view spec) {
  std::map<int, Rational> out;
  spec = trim(spec);
  if (spec.empty()) return out;
  for (auto token : split(spec, ',')) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("combo term needs s=p/q: '" + std::string(token) + "'");
    const int s = variable_index(token.substr(0, eq));
    if (!out.emplace(s, parse_rational(trim(token.substr(eq + 1)))).second) {
      throw std::invalid_argument("coefficient a" + std::to_string(s) + " given twice");
    }
  }
  return out;
}

std::vector<Bound> parse_bounds_spec(std::string_view spec) {
  std::vector<Bound> out;
  spec = trim(spec);
  if (spec.empty()) return out;
  for (auto token : split(spec, ',')) {
    Bound b;
    std::size_t op = token.find(">=");
    if (op != std::string_view::npos) {
      b.kind = BoundKind::AtLeast;
    } else if ((op = token.find("<=")) != std::string_view::npos) {
      b.kind = BoundKind::AtMost;
    } else {
      throw std::invalid_argument("bound needs s>=p/q or s<=p/q: '" + std::string(token) + "'");
    }
    b.variable = variable_index(token.substr(0, op));
    b.value = parse_rational(trim(token.substr(op + 2)));
    out.push_back(std::move(b));
  }
  return out;
}

std::string to_string(const Bound& b) {
  return "a" + std::to_string(b.variable) + (b.kind == BoundKind::AtLeast ? ">=" : "<=") + to_string(b.value);
}

}  // namespace fcone
