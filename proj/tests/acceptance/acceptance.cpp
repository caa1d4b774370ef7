#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gamelab/corpus.hpp"
#include "gamelab/ef.hpp"
#include "gamelab/gadgets.hpp"
#include "gamelab/graph.hpp"
#include "gamelab/ms.hpp"
#include "gamelab/oracles.hpp"
#include "gamelab/reductions.hpp"
#include "gamelab/scripts.hpp"
#include "gamelab/symmetry.hpp"

using namespace gamelab;

namespace {

// Wall-clock ceilings per criterion, in seconds.
constexpr double kPolarityNpSeconds = 10;
constexpr double kPolarityPspaceSeconds = 600;
constexpr double kDomsetSweepSeconds = 1800;
constexpr double kDomsetMsSeconds = 600;

// Search budgets for single solves.
const SearchLimits kSolveLimits{50'000'000, 600};
const SearchLimits kDuplicatorDirectionLimits{5'000'000, 30};
const SearchLimits kApproxQueryLimits{20'000'000, 120};
const SearchLimits kCorpusLimits{10'000'000, 60};

constexpr int kRandomCorpusSize = 300;
constexpr unsigned kRandomCorpusSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Every Spoiler win anywhere in the run is converted and checked here.
struct CertificateLog {
  int checked = 0;
  std::vector<std::string> problems;

  void check(const MsPosition& pos, const MsTrace& trace, const std::string& where) {
    ++checked;
    std::string p = certificate_problem(pos, trace);
    if (!p.empty()) problems.push_back(where + ": " + p);
  }
  void add(const CorpusReport& r) {
    checked += r.certificates;
    for (const auto& f : r.failures)
      if (f.find("certificate") != std::string::npos) problems.push_back(f);
  }
};

CertificateLog certs;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

PebbledStructure at(const GadgetOutput& g, const std::vector<std::string>& names) {
  std::vector<Pebble> p;
  for (std::size_t i = 0; i < names.size(); ++i) p.push_back({"x" + std::to_string(i + 1), g.at(names[i])});
  return PebbledStructure(g.structure, p);
}

EfOptions options_for(const GadgetOutput& g) {
  EfOptions o;
  o.left_generators = g.automorphism_generators;
  o.right_generators = g.automorphism_generators;
  return o;
}

std::string graph_name(const Graph& g) {
  std::ostringstream os;
  os << "n" << g.size() << "{";
  for (std::size_t i = 0; i < g.edges().size(); ++i)
    os << (i ? "," : "") << g.edges()[i].first + 1 << "-" << g.edges()[i].second + 1;
  os << "}";
  return os.str();
}

std::string qbf_name(const QbfInstance& q) {
  std::ostringstream os;
  for (const auto& c : q.clauses) {
    os << "(";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << ")";
  }
  return os.str();
}

std::vector<Graph> small_graphs() {
  std::vector<Graph> out;
  for (int n = 1; n <= 4; ++n)
    for (auto& g : graphs_up_to_iso(n)) out.push_back(g);
  return out;
}

std::string first(const std::vector<std::string>& items, std::size_t n = 4) {
  std::string s;
  for (std::size_t i = 0; i < items.size() && i < n; ++i) s += (i ? "; " : "") + items[i];
  if (items.size() > n) s += "; ...";
  return s;
}

// MS solve of a reduction instance with the gadget's generators and certificate checking.
Winner decide(const ReductionOutput& r, const SearchLimits& limits, const std::string& where) {
  MsOptions opt = r.ms_options();
  opt.certificate = true;
  auto res = ms_winner(r.ms(), limits, opt);
  if (res.winner == Winner::Spoiler && res.certificate) certs.check(r.ms(), *res.certificate, where);
  return res.winner;
}

// Criteria -----------------------------------------------------------------------------------

Outcome polarity_np() {
  std::vector<std::string> bad, times;
  for (int j = 1; j <= 2; ++j) {
    Timer timer;
    auto g = build_I_np(j);
    auto o = options_for(g);
    auto l = at(g, {"p"}), r = at(g, {"p'"});
    std::string tag = "j=" + std::to_string(j) + " ";
    if (ef_winner({l, r, j}, kSolveLimits, o).winner != Winner::Duplicator) bad.push_back(tag + "winner");
    auto forces = ef_wins_or_forces({l, r, j + 1}, {{g.at("q"), g.at("q'")}, {g.at("r"), g.at("r'")}}, 1,
                                    kSolveLimits, o);
    if (forces != true) bad.push_back(tag + "forcing");
    auto c1 = at(g, {"p", "c_1"});
    if (ef_forced({c1, at(g, {"p'", "c_3"}), j}, g.at("r"), g.at("r'"), 0, kSolveLimits, o) != true)
      bad.push_back(tag + "c_1/c_3 forces (r,r')");
    if (ef_forced({c1, at(g, {"p'", "c_4"}), j}, g.at("q"), g.at("q'"), 0, kSolveLimits, o) != true)
      bad.push_back(tag + "c_1/c_4 forces (q,q')");
    double s = timer.seconds();
    times.push_back(tag + fmt(s));
    if (s > kPolarityNpSeconds) bad.push_back(tag + "over time");
  }
  return {bad.empty(), "Duplicator at j rounds, forcing at j+1 [" + first(times) + "]" +
                           (bad.empty() ? "" : " failed: " + first(bad))};
}

Outcome polarity_pspace() {
  Timer timer;
  auto g = build_I_pspace(2);
  auto o = options_for(g);
  auto l = at(g, {"p"}), r = at(g, {"p'"});
  std::vector<std::string> bad;
  if (g.structure->size() != 464) bad.push_back("size " + std::to_string(g.structure->size()));
  auto w = ef_winner({l, r, 2}, kSolveLimits, o).winner;
  if (w != Winner::Duplicator) bad.push_back("2-round winner " + to_string(w));
  auto forces = ef_wins_or_forces({l, r, 3}, {{g.at("q"), g.at("q'")}}, 2, kSolveLimits, o);
  if (forces != true) bad.push_back(!forces ? "forcing unknown" : "no forcing of (q,q')");
  double s = timer.seconds();
  if (s > kPolarityPspaceSeconds) bad.push_back("over time");
  return {bad.empty(), "464 vertices, 2-round Duplicator, (q,q') forced by round 3 [" + fmt(s) + "]" +
                           (bad.empty() ? "" : " failed: " + first(bad))};
}

Outcome domset_ef_sweep() {
  Timer timer;
  int total = 0, unknown = 0;
  std::vector<std::string> bad;
  for (const auto& g : small_graphs())
    for (int k = 1; k <= 2; ++k) {
      ++total;
      auto red = reduce_domset_to_ef(g, k);
      auto w = ef_winner(red.ef(), kSolveLimits, red.ef_options()).winner;
      Winner expect = oracle::has_domset(g, k) ? Winner::Spoiler : Winner::Duplicator;
      if (w == Winner::Unknown) ++unknown;
      if (w != expect)
        bad.push_back(graph_name(g) + " k=" + std::to_string(k) + " got " + to_string(w) + " expected " +
                      to_string(expect));
    }
  double s = timer.seconds();
  if (s > kDomsetSweepSeconds) bad.push_back("over time");
  return {bad.empty(), std::to_string(total - static_cast<int>(bad.size())) + "/" + std::to_string(total) +
                           " agree, " + std::to_string(unknown) + " unknown [" + fmt(s) + "]" +
                           (bad.empty() ? "" : " mismatches: " + first(bad, 8))};
}

Outcome domset_ms_small() {
  Timer timer;
  std::vector<std::string> bad;
  Graph p3(3, {{0, 1}, {1, 2}});
  auto red = reduce_domset_to_ms(p3, 1);
  auto script = spoiler_script_domset(red.gadget, 1, oracle::min_domset_witness(p3));
  auto run = run_spoiler_script(script, red.ms());
  if (red.ms().rounds != 3) bad.push_back("P3 rounds " + std::to_string(red.ms().rounds));
  if (!run.win) bad.push_back("P3 script: " + run.message);
  else certs.check(red.ms(), run.trace, "P3 domset script");
  Graph two_k1(2);
  auto none = reduce_domset_to_ms(two_k1, 1).with_rounds(2);
  auto w = decide(none, kSolveLimits, "2K1 exact");
  if (w != Winner::Duplicator) bad.push_back("2K1 at 2 rounds: " + to_string(w));
  double s = timer.seconds();
  if (s > kDomsetMsSeconds) bad.push_back("over time");
  return {bad.empty(), "P3 script wins at 3 rounds, 2K1 Duplicator at 2 rounds [" + fmt(s) + "]" +
                           (bad.empty() ? "" : " failed: " + first(bad))};
}

Outcome skyscraper_scripts() {
  Timer timer;
  int wins = 0, runs = 0, dup = 0, spoiler = 0, unknown = 0;
  std::vector<std::string> bad, contradicted;
  for (const auto& q : two_variable_qbfs(2)) {
    int m = static_cast<int>(q.clauses.size());
    int opt = oracle::maxqsat_value(q);
    for (int t = 1; t <= m; ++t) {
      auto red = reduce_qsat_to_ms(q, t);
      std::string tag = qbf_name(q) + " t=" + std::to_string(t);
      if (opt >= t) {
        ++runs;
        auto policy = [&q](const std::vector<int>& a) { return oracle::best_existential_move(q, a); };
        auto run = run_spoiler_script(spoiler_script_skyscraper(red.gadget, q, t, policy), red.ms());
        if (run.win) {
          ++wins;
          certs.check(red.ms(), run.trace, tag + " script");
        } else {
          bad.push_back(tag + ": " + run.message);
        }
      } else {
        auto w = decide(red.with_rounds(red.budget.duplicator), kDuplicatorDirectionLimits, tag + " exact");
        if (w == Winner::Duplicator) ++dup;
        else if (w == Winner::Spoiler) ++spoiler, contradicted.push_back(tag);
        else ++unknown;
      }
    }
  }
  double s = timer.seconds();
  std::string detail = "script wins " + std::to_string(wins) + "/" + std::to_string(runs) +
                       " at 2k+m-t+2; duplicator direction at 2k+m-t+1 (reported, not asserted): " +
                       std::to_string(dup) + " Duplicator, " + std::to_string(spoiler) + " Spoiler, " +
                       std::to_string(unknown) + " unknown [" + fmt(s) + "]";
  if (!contradicted.empty()) detail += " Spoiler at the Duplicator budget e.g. " + first(contradicted, 3);
  if (!bad.empty()) detail += " script failures: " + first(bad);
  return {bad.empty() && runs > 0, detail};
}

Outcome random_synth_bridge() {
  std::mt19937 rng(kRandomCorpusSeed);
  std::vector<MsPosition> corpus;
  CorpusShape shape{5, 2, 3, 1};
  for (int i = 0; i < kRandomCorpusSize; ++i) corpus.push_back(random_ms_position(rng, shape));
  Timer timer;
  auto r = cross_check_synth(corpus, kCorpusLimits);
  certs.add(r);
  return {r.clean() && r.instances >= 200,
          std::to_string(r.instances) + " instances (" + std::to_string(r.spoiler) + " Spoiler, " +
              std::to_string(r.duplicator) + " Duplicator), " + std::to_string(r.disagreements) + " disagreements, " +
              std::to_string(r.unknown) + " unknown [" + fmt(timer.seconds()) + "]" +
              (r.failures.empty() ? "" : " " + first(r.failures))};
}

Outcome discard_and_subset() {
  Timer timer;
  auto r = cross_check_subset(exhaustive_ms_corpus(3, 2), kCorpusLimits);
  certs.add(r);
  return {r.clean(), std::to_string(r.instances) + " positions, " + std::to_string(r.disagreements) +
                         " disagreements, " + std::to_string(r.unknown) + " unknown [" + fmt(timer.seconds()) + "]" +
                         (r.failures.empty() ? "" : " " + first(r.failures))};
}

Outcome structural_counts() {
  std::vector<std::string> bad;
  int generators = 0;
  auto check_generators = [&](const GadgetOutput& g, const std::string& name) {
    for (const auto& p : g.automorphism_generators) {
      ++generators;
      if (!is_automorphism(*g.structure, p)) bad.push_back(name + " generator");
    }
  };
  auto expect_size = [&](const GadgetOutput& g, std::size_t n, const std::string& name) {
    if (g.structure->size() != n)
      bad.push_back(name + " has " + std::to_string(g.structure->size()) + " != " + std::to_string(n));
    check_generators(g, name);
  };
  for (int j = 1; j <= 4; ++j) {
    std::string js = std::to_string(j);
    expect_size(build_I_np(j), 10 + 8 * j, "I_np(" + js + ")");
    expect_size(build_I_np(j, false), 10 + 8 * j, "plain I_np(" + js + ")");
    expect_size(build_J(j), 7 + 8 * j, "J(" + js + ")");
    expect_size(build_J_prime(j), 7 + 8 * j, "J'(" + js + ")");
    if (j >= 2) expect_size(build_I_pspace(j), 288 * j - 112, "I_pspace(" + js + ")");
  }
  const Relation* e = nullptr;
  for (const auto& g : small_graphs())
    for (int k = 1; k <= 2; ++k) {
      auto gad = build_domset_structure(g, k);
      std::string name = "domset " + graph_name(g) + " k=" + std::to_string(k);
      check_generators(gad, name);
      e = &gad.structure->relation("E");
      std::size_t added = 0;
      for (const char* w : {"q", "q'", "r", "r'"})
        for (int v = 1; v <= g.size(); ++v)
          added += e->out(gad.structure->at(std::string("<") + w + "_1,v" + std::to_string(v) + ">")).size();
      std::size_t expect = 32 * k * g.size() + 64 * k * g.edges().size();
      if (added != expect) bad.push_back(name + " bottom-copy edges " + std::to_string(added) + " != " + std::to_string(expect));
      for (const char* n : {"null_q'", "null_r'"})
        if (!e->out(gad.at(n)).empty()) bad.push_back(name + " " + n + " has out-edges");
    }
  int skyscrapers = 0;
  for (const auto& q : two_variable_qbfs(2)) {
    if (skyscrapers++ % 10 != 0) continue;
    for (int t = 1; t <= static_cast<int>(q.clauses.size()); ++t) {
      auto gad = build_skyscraper(q, t);
      std::string name = "skyscraper " + qbf_name(q) + " t=" + std::to_string(t);
      check_generators(gad, name);
      const auto& rel = gad.structure->relation("E");
      for (std::size_t i = 1; i <= q.clauses.size(); ++i)
        if (!rel.out(gad.at("null_" + std::to_string(i))).empty()) bad.push_back(name + " null has out-edges");
    }
  }
  return {bad.empty(), "gadget sizes j<=4, bottom-copy edges and null vertices on all graphs n<=4 k<=2, " +
                           std::to_string(generators) + " generators validated" +
                           (bad.empty() ? "" : " failed: " + first(bad))};
}

Outcome approximation() {
  Timer timer;
  std::vector<std::string> bad;
  int unknown = 0, graphs = 0, qbfs = 0;
  auto decider = [](const std::string& where) {
    return [where](const ReductionOutput& r) { return decide(r, kApproxQueryLimits, where); };
  };
  for (const auto& g : small_graphs()) {
    ++graphs;
    int opt = oracle::min_domset_bruteforce(g);
    auto res = approx_domset(g, decider("approx domset " + graph_name(g)), DomsetSemantics::Text);
    if (res.status == ApproxResult::Status::Unknown) {
      ++unknown;
      continue;
    }
    bool ok = res.status == ApproxResult::Status::Output && res.value >= opt && res.value <= 2 * opt;
    if (!ok)
      bad.push_back("domset " + graph_name(g) + " opt " + std::to_string(opt) + " got " + to_string(res.status) +
                    (res.status == ApproxResult::Status::Output ? " " + std::to_string(res.value) : ""));
  }
  for (const auto& q : two_variable_qbfs(2)) {
    ++qbfs;
    int opt = oracle::maxqsat_value(q);
    auto res = approx_maxqsat(q, decider("approx qsat " + qbf_name(q)));
    if (res.status == ApproxResult::Status::Unknown) {
      ++unknown;
      continue;
    }
    int v = res.status == ApproxResult::Status::Output ? res.value : 0;
    if (v != opt && v != opt - 1)
      bad.push_back("qsat " + qbf_name(q) + " opt " + std::to_string(opt) + " got " + std::to_string(v));
  }
  return {bad.empty() && unknown == 0,
          std::to_string(graphs) + " graphs, " + std::to_string(qbfs) + " QBFs, " + std::to_string(bad.size()) +
              " contract violations, " + std::to_string(unknown) + " unknown [" + fmt(timer.seconds()) + "]" +
              (bad.empty() ? "" : " e.g. " + first(bad, 6))};
}

Outcome certificates() {
  return {certs.checked > 0 && certs.problems.empty(),
          std::to_string(certs.checked) + " wins converted to separating formulas with quantifier count = rounds used, " +
              std::to_string(certs.problems.size()) + " problems" +
              (certs.problems.empty() ? "" : ": " + first(certs.problems))};
}

std::set<int> parse_ids(const std::string& list) {
  std::set<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string only, known, report;
  app.add_option("--only", only, "Comma-separated criteria to run (default all)");
  app.add_option("--known-failures", known,
                 "Criteria expected to fail; exit status is 0 iff exactly these fail");
  app.add_option("--report", report, "Also write the criterion lines to this file");
  CLI11_PARSE(app, argc, argv);
  std::ofstream report_file;
  if (!report.empty()) report_file.open(report);

  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, polarity_np},         {2, polarity_pspace},     {3, domset_ef_sweep},  {4, domset_ms_small},
      {5, skyscraper_scripts},  {6, random_synth_bridge}, {7, discard_and_subset}, {8, structural_counts},
      {9, approximation},       {10, certificates},
  };
  std::set<int> selected = parse_ids(only), expected = parse_ids(known), failed;
  for (const auto& [id, run] : criteria) {
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    std::ostringstream line;
    line << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail;
    std::cout << line.str() << std::endl;
    if (report_file) report_file << line.str() << std::endl;
  }
  std::set<int> expected_run;
  for (int id : expected)
    if (selected.empty() || selected.count(id)) expected_run.insert(id);
  if (failed == expected_run) return 0;
  std::cout << "failing set differs from --known-failures" << std::endl;
  return 1;
}
