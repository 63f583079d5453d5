#include "wittrep/report.hpp"

#include <sstream>

namespace wittrep {

using nlohmann::json;

json RunConfig::to_json() const {
  return json{{"command", command},
              {"scheme", scheme},
              {"rings", rings},
              {"q", q},
              {"r", r},
              {"max_order", max_order},
              {"max_functionals", max_functionals},
              {"max_classes", max_classes},
              {"seed", seed},
              {"cache_dir", cache_dir},
              {"out", out},
              {"workers", workers}};
}

json multiset_json(const DegreeMultiset& m) {
  json out = json::array();
  for (const auto& [d, c] : m) out.push_back({d, c});
  return out;
}

std::string multiset_csv(const DegreeMultiset& m) {
  std::ostringstream out;
  out << "dimension,count\n";
  for (const auto& [d, c] : m) out << d << ',' << c << '\n';
  return out.str();
}

namespace {

json checks_json(const TableChecks& c) {
  return {{"count_matches_classes", c.count_matches_classes},
          {"sum_of_squares", c.sum_of_squares},
          {"row_orthogonality", c.row_orthogonality},
          {"column_orthogonality", c.column_orthogonality},
          {"degrees_divide_order", c.degrees_divide_order}};
}

json orbit_json(const OrbitPrediction& o) {
  return {{"beta", o.beta.values},
          {"beta_index", o.beta_index},
          {"orbit_size", o.orbit_size},
          {"stab_order", o.stab_order},
          {"index", o.index},
          {"extension_exists", o.extension_exists},
          {"extension_witness", o.extension_witness_ok},
          {"fiber_degrees", multiset_json(o.fiber_degrees)},
          {"predicted_degrees", multiset_json(o.predicted)},
          {"stabilizer_degrees", multiset_json(o.small_degrees)},
          {"stabilizer_formula", o.stabilizer_matches},
          {"quotient_verified", o.quotient_verified},
          {"dim_formula", o.dim_formula},
          {"clifford_bound", o.clifford_bound},
          {"n1", o.counting.n1},
          {"n2", o.counting.n2},
          {"n3", o.counting.n3},
          {"n1_eq_n2", o.counting.n1_equals_n2()},
          {"n1_eq_n3", o.counting.n1_equals_n3()}};
}

json pairing_json(const std::vector<OrbitPairing>& pairs) {
  json out = json::array();
  for (const auto& p : pairs)
    out.push_back({{"mixed_beta", p.mixed_beta}, {"equal_beta", p.equal_beta}, {"fibers_equal", p.fibers_equal}});
  return out;
}

std::string multiset_text(const DegreeMultiset& m) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [d, c] : m) {
    out << (first ? "" : ", ") << d << ':' << c;
    first = false;
  }
  out << '}';
  return out.str();
}

}  // namespace

json ring_json(const RingAnalysis& a) {
  json orbits = json::array();
  for (const auto& o : a.orbits) orbits.push_back(orbit_json(o));
  return {{"ring_descriptor", a.ring_descriptor},
          {"group", a.group_descriptor},
          {"order", a.order},
          {"num_classes", a.num_classes},
          {"mixed_characteristic", a.mixed_characteristic},
          {"ell", a.table.ell},
          {"degree_multiset", multiset_json(a.oracle)},
          {"clifford_multiset", multiset_json(a.predicted)},
          {"partial", a.partial},
          {"fiber_partition", a.fiber_partition},
          {"table_checks", checks_json(a.table_checks)},
          {"orbit_table", orbits}};
}

json comparison_json(const ComparisonReport& r, const RunConfig& config) {
  const auto& v = r.verdicts;
  return {{"scheme", r.scheme.to_string()},
          {"q", r.q},
          {"rings", {ring_json(r.rings[0]), ring_json(r.rings[1])}},
          {"pairing", {{"sigma_star", pairing_json(r.pairing)}, {"sigma_star_inverse", pairing_json(r.pairing_inverse)}}},
          {"verdicts",
           {{"global_equal", v.global_equal},
            {"per_orbit_equal", v.per_orbit_equal},
            {"per_orbit_equal_inverse", v.per_orbit_equal_inverse},
            {"clifford_matches_oracle", v.clifford_matches_oracle},
            {"extensions_exist", v.extensions_exist},
            {"dim_formula", v.dim_formula},
            {"stabilizer_formula", v.stabilizer_formula},
            {"exploratory", v.exploratory}}},
          {"seed", r.seed},
          {"timings_ms", {{r.rings[0].ring_descriptor, r.timings_ms[0]}, {r.rings[1].ring_descriptor, r.timings_ms[1]}}},
          {"config", config.to_json()}};
}

json verification_json(const VerificationBundle& b) {
  json checks = json::array();
  for (const auto& c : b.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"asserted", c.asserted}, {"detail", c.detail}});
  json counting = json::array();
  for (const auto& o : b.analysis.orbits)
    counting.push_back({{"beta", o.beta.values},
                        {"n1", o.counting.n1},
                        {"n2", o.counting.n2},
                        {"n3", o.counting.n3},
                        {"n1_eq_n2", o.counting.n1_equals_n2()},
                        {"n1_eq_n3", o.counting.n1_equals_n3()}});
  return {{"scheme", b.scheme},
          {"ring", b.ring},
          {"twist_exponent", b.twist_exponent},
          {"untwisted_law_fails", b.untwisted_law_fails},
          {"exploratory", b.exploratory},
          {"passed", b.passed()},
          {"checks", checks},
          {"counting", counting},
          {"analysis", ring_json(b.analysis)}};
}

json classes_json(const MatrixGroup& group, const RunConfig& config) {
  const auto& cls = group.classes();
  json classes = json::array();
  for (std::size_t c = 0; c < cls.count(); ++c)
    classes.push_back({{"representative", cls.representatives[c]},
                       {"size", cls.sizes[c]},
                       {"centralizer_order", cls.centralizer_orders[c]}});
  return {{"group", group.descriptor()},
          {"order", group.size()},
          {"num_classes", cls.count()},
          {"classes", classes},
          {"config", config.to_json()}};
}

std::string comparison_text(const ComparisonReport& r) {
  std::ostringstream out;
  out << r.scheme.to_string() << " q=" << r.q << (r.verdicts.exploratory ? " [EXPLORATORY]" : "") << '\n';
  for (const auto& a : r.rings) {
    out << "  " << a.group_descriptor << ": order " << a.order << ", " << a.num_classes << " classes\n"
        << "    oracle   " << multiset_text(a.oracle) << '\n'
        << "    clifford " << multiset_text(a.predicted) << (a.partial ? " (partial)" : "") << '\n';
  }
  const auto& v = r.verdicts;
  out << "  global_equal=" << v.global_equal << " per_orbit_equal=" << v.per_orbit_equal
      << " per_orbit_equal_inverse=" << v.per_orbit_equal_inverse
      << " clifford_matches_oracle=" << v.clifford_matches_oracle << '\n';
  return out.str();
}

std::string verification_text(const VerificationBundle& b) {
  std::ostringstream out;
  out << b.scheme << " over " << b.ring << (b.exploratory ? " [EXPLORATORY]" : "") << ", twist i=" << b.twist_exponent
      << '\n';
  for (const auto& c : b.checks)
    out << "  " << (c.passed ? "pass" : "FAIL") << (c.asserted ? "  " : "* ") << c.name << "  " << c.detail << '\n';
  out << "  orbit  n1  n2  n3\n";
  for (const auto& o : b.analysis.orbits)
    out << "  " << o.beta_index << "  " << o.counting.n1 << "  " << o.counting.n2 << "  " << o.counting.n3 << '\n';
  return out.str();
}

std::string classes_text(const MatrixGroup& group) {
  const auto& cls = group.classes();
  std::ostringstream out;
  out << group.descriptor() << ": order " << group.size() << ", " << cls.count() << " classes\n";
  out << "  class  size  centralizer\n";
  for (std::size_t c = 0; c < cls.count(); ++c)
    out << "  " << c << "  " << cls.sizes[c] << "  " << cls.centralizer_orders[c] << '\n';
  return out.str();
}

std::vector<std::string> validate_comparison_json(const json& report) {
  std::vector<std::string> problems;
  auto need = [&](const json& obj, const char* key, json::value_t type, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
      problems.push_back(where + ": missing " + key);
      return false;
    }
    const auto t = obj.at(key).type();
    const bool numeric = type == json::value_t::number_unsigned &&
                         (t == json::value_t::number_integer || t == json::value_t::number_unsigned);
    if (t != type && !numeric) {
      problems.push_back(where + ": wrong type for " + key);
      return false;
    }
    return true;
  };
  using V = json::value_t;
  need(report, "scheme", V::string, "report");
  need(report, "q", V::number_unsigned, "report");
  need(report, "seed", V::number_unsigned, "report");
  need(report, "timings_ms", V::object, "report");
  need(report, "config", V::object, "report");
  if (need(report, "verdicts", V::object, "report"))
    for (const char* k : {"global_equal", "per_orbit_equal", "clifford_matches_oracle", "exploratory"})
      need(report["verdicts"], k, V::boolean, "verdicts");
  if (need(report, "rings", V::array, "report")) {
    if (report["rings"].size() != 2) problems.push_back("report: rings must have two entries");
    for (const auto& ring : report["rings"]) {
      need(ring, "ring_descriptor", V::string, "ring");
      need(ring, "order", V::number_unsigned, "ring");
      need(ring, "num_classes", V::number_unsigned, "ring");
      need(ring, "degree_multiset", V::array, "ring");
      if (!need(ring, "orbit_table", V::array, "ring")) continue;
      for (const auto& o : ring["orbit_table"]) {
        need(o, "beta", V::array, "orbit");
        for (const char* k : {"orbit_size", "stab_order", "index", "n1", "n2", "n3"})
          need(o, k, V::number_unsigned, "orbit");
        need(o, "extension_exists", V::boolean, "orbit");
        need(o, "fiber_degrees", V::array, "orbit");
      }
    }
  }
  return problems;
}

}  // namespace wittrep
