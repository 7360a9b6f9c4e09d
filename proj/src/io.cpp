#include "qtope/io.hpp"

#include <algorithm>
#include <sstream>

namespace qtope {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

Fence parse_one_fence(std::string_view token) {
  std::string text(trim(token));
  std::istringstream in(text);
  int a = 0, b = 0;
  char dash = 0;
  if (!(in >> a >> dash >> b) || dash != '-')
    throw InvalidInputError("malformed fence: " + text);
  std::vector<int> left;
  char c = 0;
  if (in >> c) {
    if (c != ':') throw InvalidInputError("malformed fence: " + text);
    if (!(in >> c) || c != '{')
      throw InvalidInputError("malformed fence: " + text);
    while (in >> c && c != '}') {
      if (c == ',') continue;
      in.putback(c);
      int v;
      if (!(in >> v)) throw InvalidInputError("malformed fence: " + text);
      left.push_back(v);
    }
    if (c != '}') throw InvalidInputError("malformed fence: " + text);
  }
  return make_fence(a, b, left);
}

}  // namespace

std::vector<Fence> parse_fences(std::string_view text) {
  std::vector<Fence> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t sep = text.find(';', pos);
    std::string_view token = text.substr(
        pos, sep == std::string_view::npos ? std::string_view::npos : sep - pos);
    if (!trim(token).empty()) out.push_back(parse_one_fence(token));
    if (sep == std::string_view::npos) break;
    pos = sep + 1;
  }
  return out;
}

std::string format_fences(std::span<const Fence> fences) {
  std::string out;
  for (const Fence& f : fences) {
    if (!out.empty()) out += ';';
    out += std::to_string(f.a) + '-' + std::to_string(f.b);
    auto left = f.left_values();
    if (!left.empty()) {
      out += ":{";
      for (std::size_t i = 0; i < left.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(left[i]);
      }
      out += '}';
    }
  }
  return out;
}

Congruence congruence_from_terse(int n, std::string_view text) {
  std::vector<Fence> fences = parse_fences(text);
  return Congruence::closure(n, fences);
}

Congruence congruence_from_json(const nlohmann::json& j) {
  if (!j.contains("n"))
    throw InvalidInputError("diagram JSON requires field \"n\"");
  int n = j.at("n").get<int>();
  std::vector<Fence> fences;
  for (const auto& jf : j.value("fences", nlohmann::json::array())) {
    std::vector<int> left;
    for (const auto& v : jf.value("left", nlohmann::json::array()))
      left.push_back(v.get<int>());
    fences.push_back(
        make_fence(jf.at("a").get<int>(), jf.at("b").get<int>(), left));
  }
  bool generators = j.value("generators", true);
  Congruence c = Congruence::closure(n, fences);
  if (!generators && c.size() != static_cast<int>(fences.size()))
    throw InvalidInputError(
        "diagram declared generators=false but the fence list is not a "
        "downset");
  return c;
}

nlohmann::json diagram_to_json(const Congruence& c, bool reduced) {
  nlohmann::json out;
  out["n"] = c.n();
  out["generators"] = reduced;
  nlohmann::json arr = nlohmann::json::array();
  std::vector<Fence> fences = reduced ? reduced_diagram(c).arcs : c.fences();
  for (const Fence& f : fences) {
    nlohmann::json jf;
    jf["a"] = static_cast<int>(f.a);
    jf["b"] = static_cast<int>(f.b);
    jf["left"] = f.left_values();
    arr.push_back(std::move(jf));
  }
  out["fences"] = std::move(arr);
  return out;
}

nlohmann::json partition_to_json(const ClassPartition& part) {
  nlohmann::json out = nlohmann::json::array();
  for (const EquivalenceClass& cls : part.classes) {
    nlohmann::json jc;
    jc["id"] = cls.id;
    jc["min"] = to_string(cls.min);
    jc["max"] = to_string(cls.max);
    jc["size"] = cls.size;
    jc["representative"] = to_string(cls.representative);
    out.push_back(std::move(jc));
  }
  return out;
}

std::string graph_to_dot(const QuotientGraph& g, const ClassPartition& part) {
  std::ostringstream out;
  out << "graph quotient {\n";
  for (int v = 0; v < g.node_count; ++v)
    out << "  " << v << " [label=\"" << to_string(part.classes[v].representative)
        << "\"];\n";
  for (const auto& e : g.edges)
    out << "  " << e.u << " -- " << e.v << " [label=\"" << e.label_a << ","
        << e.label_b << "\"];\n";
  out << "}\n";
  return out.str();
}

nlohmann::json graph_to_json(const QuotientGraph& g,
                             const ClassPartition& part) {
  nlohmann::json out;
  out["n"] = g.n;
  out["nodes"] = nlohmann::json::array();
  for (int v = 0; v < g.node_count; ++v) {
    nlohmann::json jn;
    jn["id"] = v;
    jn["representative"] = to_string(part.classes[v].representative);
    jn["degree"] = g.degree[v];
    out["nodes"].push_back(std::move(jn));
  }
  out["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges)
    out["edges"].push_back({{"u", e.u},
                            {"v", e.v},
                            {"label", {e.label_a, e.label_b}}});
  out["adjacency"] = g.adj;
  return out;
}

nlohmann::json analyze(const Congruence& c, std::uint64_t cycle_budget) {
  nlohmann::json out;
  out["n"] = c.n();
  out["essential"] = c.essential();
  out["fence_count"] = c.size();
  out["reduced_diagram"] = format_fences(reduced_diagram(c).arcs);

  ClassPartition part = compute_classes(c, /*with_members=*/false);
  RepSet reps = build_representatives(c, part);
  for (std::size_t id = 0; id < part.classes.size(); ++id)
    part.classes[id].representative = reps.class_rep[id];
  QuotientGraph g = build_quotient_graph(part);

  out["classes"] = g.node_count;
  nlohmann::json hist = nlohmann::json::object();
  for (int v = 0; v < g.node_count; ++v) {
    std::string key = std::to_string(g.degree[v]);
    hist[key] = hist.value(key, 0) + 1;
  }
  out["degree_histogram"] = std::move(hist);
  out["min_degree"] = min_degree(g);
  out["max_degree"] = max_degree(g);

  if (c.essential()) {
    out["regular"] = is_regular(c);
    out["vertex_transitive"] = is_vertex_transitive(c);
  } else {
    out["regular"] = nullptr;
    out["vertex_transitive"] = nullptr;
    out["note"] =
        "regularity/vertex-transitivity characterizations apply to essential "
        "congruences only";
  }

  BipartiteProbe probe = bipartite_probe(c, g);
  out["bipartite"] = {{"graph", probe.graph_bipartite},
                      {"conjecture", probe.conjecture_predicts}};

  if (c.n() <= 8) {
    CyclicOrderReport cyc = is_cyclic_order(c);
    out["cyclic"] = {{"parity_condition", cyc.parity_condition},
                     {"actually_cyclic", cyc.actually_cyclic}};
  } else {
    out["cyclic"] = nullptr;
  }

  HamiltonPathResult path = hamilton_path(c, part, g);
  out["hamilton_path_length"] = path.class_ids.size();

  bool cycle_closes = path.class_ids.size() >= 3 &&
                      g.adjacent(path.class_ids.front(), path.class_ids.back());
  if (cycle_closes) {
    out["hamilton_cycle_found"] = true;
  } else {
    HamiltonCycleResult cycle = hamilton_cycle(g, path.class_ids, cycle_budget);
    if (cycle.decided)
      out["hamilton_cycle_found"] = !cycle.cycle.empty();
    else
      out["hamilton_cycle_found"] = nullptr;  // budget exhausted
  }
  return out;
}

std::string table1_tsv(int max_n, bool slow) {
  if (max_n < 2) throw InvalidInputError("table1 requires max_n >= 2");
  std::ostringstream out;
  out << "# cells marked * are computed by exhaustive enumeration; plain "
         "cells by closed formula; ? is beyond the enumeration budget\n";
  out << "quantity";
  for (int n = 2; n <= max_n; ++n) out << '\t' << n;
  out << '\n';

  int enum_budget = slow ? 6 : 5;
  auto row = [&](const std::string& name, auto&& cell) {
    out << name;
    for (int n = 2; n <= max_n; ++n) out << '\t' << cell(n);
    out << '\n';
  };

  std::vector<NonIsoCounts> noniso(std::min(max_n, 5) + 1);
  for (int n = 2; n <= std::min(max_n, 5); ++n) noniso[n] = count_noniso(n);

  row("|Q_n|", [&](int n) -> std::string {
    if (n > enum_budget) return "?";
    std::uint64_t count =
        enumerate_essential_congruences(n, [](const Congruence&) {});
    return std::to_string(count) + "*";
  });
  row("|R_n|", [&](int n) { return std::to_string(count_regular(n)); });
  row("|V_n|",
      [&](int n) { return std::to_string(count_vertex_transitive(n)); });
  row("|Q'_n|", [&](int n) -> std::string {
    if (n > 5) return "?";
    return std::to_string(noniso[n].quotient_graphs) + "*";
  });
  row("|R'_n|", [&](int n) -> std::string {
    if (n > 5) return "?";
    return std::to_string(noniso[n].regular) + "*";
  });
  row("|V'_n|", [&](int n) { return std::to_string(count_vt_noniso(n)); });
  row("min degree", [&](int n) { return std::to_string(n - 1); });
  row("max degree", [&](int n) { return std::to_string(max_degree_bound(n)); });
  return out.str();
}

}  // namespace qtope
