// Command-line surface for generating, analyzing and counting lattice
// congruences of the weak order, and for reproducing the survey table.
//
// Exit codes: 0 success, 2 invalid input, 3 internal verification failure,
// 4 budget exceeded (n too large for the requested computation).

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>

#include "CLI11.hpp"
#include "qtope/genj.hpp"
#include "qtope/io.hpp"
#include "qtope/patterns.hpp"
#include "qtope/quotient_graph.hpp"

namespace {

struct DiagramSource {
  std::string fences;
  std::string diagram_file;
  std::string patterns;
  bool fences_given = false;
};

void add_diagram_options(CLI::App* cmd, DiagramSource& src) {
  auto* f = cmd->add_option("--fences", src.fences,
                            "inline fence list, e.g. \"1-3:{2};2-4:{3}\"");
  f->trigger_on_parse();  // allow empty string
  auto* d = cmd->add_option("--diagram", src.diagram_file,
                            "JSON diagram file with fields n/fences/generators");
  auto* p = cmd->add_option(
      "--patterns", src.patterns,
      "well-behaved vincular pattern list, e.g. \"2[31]\" or \"2[41]3,3[41]2\"");
  f->excludes(d)->excludes(p);
  d->excludes(p);
}

qtope::Congruence load_congruence(const CLI::App* cmd, const DiagramSource& src,
                                  int n) {
  bool has_fences = cmd->count("--fences") > 0;
  bool has_file = !src.diagram_file.empty();
  bool has_patterns = !src.patterns.empty();
  if (has_fences + has_file + has_patterns != 1)
    throw qtope::InvalidInputError(
        "exactly one of --fences, --diagram, --patterns is required");
  if (has_fences) return qtope::congruence_from_terse(n, src.fences);
  if (has_patterns) {
    qtope::WellBehavedSet set(qtope::parse_patterns(src.patterns));
    return qtope::congruence_from_patterns(set, n);
  }
  std::ifstream in(src.diagram_file);
  if (!in)
    throw qtope::InvalidInputError("cannot open diagram file: " +
                                   src.diagram_file);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw qtope::InvalidInputError(std::string("malformed diagram JSON: ") +
                                   e.what());
  }
  qtope::Congruence c = qtope::congruence_from_json(j);
  if (c.n() != n && n != 0)
    throw qtope::InvalidInputError("diagram n does not match --n");
  return c;
}

void write_output(const std::string& out_file, const std::string& content) {
  if (out_file.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_file);
  if (!out)
    throw qtope::InvalidInputError("cannot open output file: " + out_file);
  out << content;
}

int run_count(int n, const std::string& what, bool verify, int jobs) {
  using namespace qtope;
  if (what == "congruences") {
    std::atomic<std::uint64_t> count{0};
    auto visitor = [&](const Congruence&) { count.fetch_add(1, std::memory_order_relaxed); };
    std::uint64_t total = jobs > 1
                              ? parallel_enumerate_essential_congruences(n, jobs, visitor)
                              : enumerate_essential_congruences(n, visitor);
    if (total != count.load())
      throw VerificationError("enumeration count mismatch");
    std::cout << total << "\n";
    return 0;
  }
  if (what == "regular") {
    std::uint64_t formula = count_regular(n);
    if (verify) {
      if (n > 5) throw BudgetError("--verify enumerates: n <= 5");
      std::atomic<std::uint64_t> filtered{0};
      std::mutex mu;
      auto visitor = [&](const Congruence& c) {
        if (is_regular(c)) filtered.fetch_add(1, std::memory_order_relaxed);
      };
      if (jobs > 1) {
        parallel_enumerate_essential_congruences(n, jobs, visitor);
      } else {
        enumerate_essential_congruences(n, visitor);
      }
      (void)mu;
      if (filtered.load() != formula)
        throw VerificationError("enumeration disagrees with C_{n-1}^2");
    }
    std::cout << formula << "\n";
    return 0;
  }
  if (what == "vertex-transitive") {
    std::uint64_t formula = count_vertex_transitive(n);
    if (verify) {
      if (n > 5) throw BudgetError("--verify enumerates: n <= 5");
      std::atomic<std::uint64_t> filtered{0};
      auto visitor = [&](const Congruence& c) {
        if (is_vertex_transitive(c))
          filtered.fetch_add(1, std::memory_order_relaxed);
      };
      if (jobs > 1) {
        parallel_enumerate_essential_congruences(n, jobs, visitor);
      } else {
        enumerate_essential_congruences(n, visitor);
      }
      if (filtered.load() != formula)
        throw VerificationError(
            "enumeration disagrees with the composition formula");
    }
    std::cout << formula << "\n";
    return 0;
  }
  if (what == "vt-noniso") {
    std::uint64_t formula = count_vt_noniso(n);
    if (verify) {
      if (n > 5) throw BudgetError("--verify enumerates: n <= 5");
      if (count_noniso(n).vertex_transitive != formula)
        throw VerificationError("bucketing disagrees with t_{n+1}");
    }
    std::cout << formula << "\n";
    return 0;
  }
  if (what == "noniso") {
    NonIsoCounts counts = count_noniso(n);
    if (verify) {
      std::uint64_t bound = essential_fence_count(n) + 1;
      if (counts.quotient_graphs < bound)
        throw VerificationError("|Q'_n| below the chain bound");
      chain_bound_check(n);
    }
    std::cout << counts.quotient_graphs << "\t" << counts.regular << "\n";
    return 0;
  }
  throw qtope::InvalidInputError(
      "--what must be one of congruences, regular, vertex-transitive, "
      "vt-noniso, noniso");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "quotientope: lattice congruences of the weak order on S_n, Hamilton\n"
      "paths on their quotient graphs, and the associated counting results"};
  app.require_subcommand(1);

  int n = 0;
  bool verify = false;
  bool slow = false;
  bool annotate = false;
  int jobs = 1;
  int max_n = 7;
  std::string what, format = "dot", out_file;
  DiagramSource src;
  bool emit_congruence = false;

  auto* hampath = app.add_subcommand(
      "hampath", "print a Hamilton path on the quotient graph, one class "
                 "representative per line");
  hampath->add_option("--n", n, "size of the symmetric group")->required();
  add_diagram_options(hampath, src);
  hampath->add_flag("--classes", annotate, "annotate lines with # class=<id>");

  auto* count = app.add_subcommand("count", "survey-table counting results");
  count->add_option("--n", n)->required();
  count
      ->add_option("--what", what,
                   "congruences | regular | vertex-transitive | vt-noniso | "
                   "noniso")
      ->required();
  count->add_flag("--verify", verify,
                  "re-derive formula counts by enumeration (n <= 5)");
  count->add_option("--jobs", jobs, "worker threads for enumeration");

  auto* analyze_cmd = app.add_subcommand(
      "analyze", "JSON structural report for one congruence");
  analyze_cmd->add_option("--n", n)->required();
  add_diagram_options(analyze_cmd, src);

  auto* export_cmd =
      app.add_subcommand("export", "write the quotient graph as DOT or JSON");
  export_cmd->add_option("--n", n)->required();
  add_diagram_options(export_cmd, src);
  export_cmd->add_option("--format", format, "dot | json");
  export_cmd->add_option("--out", out_file, "output file (default stdout)");

  auto* table1 = app.add_subcommand(
      "table1", "emit the full survey table up to --max-n as TSV");
  table1->add_option("--max-n", max_n, "last column (default 7)");
  table1->add_flag("--slow", slow, "enumerate |Q_6| as well (minutes)");

  auto* patterns_cmd = app.add_subcommand(
      "patterns", "list an avoidance set; optionally synthesize the "
                  "congruence of a well-behaved set");
  patterns_cmd->add_option("--n", n)->required();
  patterns_cmd->add_option("--patterns", src.patterns, "comma-separated list")
      ->required();
  patterns_cmd->add_flag("--emit-congruence", emit_congruence,
                         "print the induced fence downset instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (hampath->parsed()) {
      qtope::Congruence c = load_congruence(hampath, src, n);
      qtope::HamiltonPathResult path = qtope::hamilton_path(c);
      for (std::size_t i = 0; i < path.representatives.size(); ++i) {
        std::cout << qtope::to_string(path.representatives[i]);
        if (annotate) std::cout << " # class=" << path.class_ids[i];
        std::cout << "\n";
      }
      return 0;
    }
    if (count->parsed()) return run_count(n, what, verify, jobs);
    if (analyze_cmd->parsed()) {
      qtope::Congruence c = load_congruence(analyze_cmd, src, n);
      std::cout << qtope::analyze(c).dump(2) << "\n";
      return 0;
    }
    if (export_cmd->parsed()) {
      qtope::Congruence c = load_congruence(export_cmd, src, n);
      qtope::ClassPartition part = qtope::compute_classes(c, false);
      qtope::RepSet reps = qtope::build_representatives(c, part);
      for (std::size_t id = 0; id < part.classes.size(); ++id)
        part.classes[id].representative = reps.class_rep[id];
      qtope::QuotientGraph g = qtope::build_quotient_graph(part);
      if (format == "dot") {
        write_output(out_file, qtope::graph_to_dot(g, part));
      } else if (format == "json") {
        write_output(out_file, qtope::graph_to_json(g, part).dump(2) + "\n");
      } else {
        throw qtope::InvalidInputError("--format must be dot or json");
      }
      return 0;
    }
    if (table1->parsed()) {
      std::cout << qtope::table1_tsv(max_n, slow);
      return 0;
    }
    if (patterns_cmd->parsed()) {
      std::vector<qtope::Pattern> pats = qtope::parse_patterns(src.patterns);
      if (emit_congruence) {
        qtope::WellBehavedSet set(pats);
        if (!set.input_was_closed())
          std::cerr << "note: input completed to its A/B-permutation closure"
                    << "\n";
        qtope::Congruence c = qtope::congruence_from_patterns(set, n);
        std::cout << qtope::format_fences(c.fences()) << "\n";
      } else {
        for (const qtope::Permutation& p : qtope::avoid_set(n, pats))
          std::cout << qtope::to_string(p) << "\n";
      }
      return 0;
    }
  } catch (const qtope::VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const qtope::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const qtope::InvalidInputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
