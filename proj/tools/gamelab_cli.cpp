#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gamelab/corpus.hpp"
#include "gamelab/ef.hpp"
#include "gamelab/errors.hpp"
#include "gamelab/formula.hpp"
#include "gamelab/gadgets.hpp"
#include "gamelab/graph.hpp"
#include "gamelab/json_util.hpp"
#include "gamelab/ms.hpp"
#include "gamelab/oracles.hpp"
#include "gamelab/qbf.hpp"
#include "gamelab/reductions.hpp"
#include "gamelab/scripts.hpp"
#include "gamelab/structure_io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace gamelab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;

struct Globals {
  bool json = false;
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> max_seconds;
  int threads = 1;

  SearchLimits limits() const {
    SearchLimits l = SearchLimits::from_env();
    if (max_nodes) l.max_nodes = *max_nodes;
    if (max_seconds) l.max_seconds = *max_seconds;
    return l;
  }
};

// What a subcommand produces: text lines, the same content as one JSON object, an exit code.
struct Report {
  std::vector<std::string> lines;
  json object = json::object();
  int exit_code = kExitOk;

  void line(const std::string& s) { lines.push_back(s); }
};

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string budget_text(const SearchLimits& l) {
  std::ostringstream os;
  os << "[budget max_nodes=" << l.max_nodes << " max_seconds=" << l.max_seconds << "]";
  return os.str();
}

json budget_json(const SearchLimits& l) { return {{"max_nodes", l.max_nodes}, {"max_seconds", l.max_seconds}}; }

void add_stats(Report& r, const SearchStats& s) {
  r.object["stats"] = {{"nodes", s.nodes}, {"memo_hits", s.memo_hits}, {"wall_seconds", s.seconds}};
  r.line("nodes " + std::to_string(s.nodes) + " memo_hits " + std::to_string(s.memo_hits));
}

void add_verdict(Report& r, Winner w, const SearchLimits& l) {
  std::string v = upper(to_string(w));
  r.object["verdict"] = v;
  r.object["budget"] = budget_json(l);
  r.line(v + " " + budget_text(l));
  if (w == Winner::Unknown) r.exit_code = kExitUnknown;
}

// Boards ----------------------------------------------------------------------------------

// Loads structure files once per path so boards from the same file share one structure
// object; files that carry automorphism generators contribute them to the solver options.
class BoardLoader {
 public:
  PebbledStructure from_file(const std::string& path, const std::optional<json>& pebbles) {
    auto key = fs::weakly_canonical(path).string();
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      json j = parse_json(read_file(path));
      Entry e;
      if (j.contains("automorphisms")) {
        GadgetOutput g = load_gadget(read_file(path));
        e.structure = g.structure;
        e.generators = g.automorphism_generators;
      } else {
        e.structure = std::make_shared<const Structure>(structure_from_json(j));
      }
      if (j.contains("pebbles")) e.pebbles = j["pebbles"];
      it = cache_.emplace(key, std::move(e)).first;
    }
    return with_pebbles(it->second.structure, pebbles ? *pebbles : it->second.pebbles);
  }

  // Entry of an instance file: a path, {"file", "pebbles"}, or an inline structure.
  PebbledStructure from_entry(const json& entry, const fs::path& base) {
    if (entry.is_string()) return from_file((base / entry.get<std::string>()).string(), std::nullopt);
    if (!entry.is_object()) throw ParseError("instance: board entry must be a path or an object");
    if (entry.contains("file")) {
      std::optional<json> peb;
      if (entry.contains("pebbles")) peb = entry["pebbles"];
      return from_file((base / entry["file"].get<std::string>()).string(), peb);
    }
    return pebbled_from_json(entry);
  }

  MsOptions ms_options() const {
    MsOptions opt;
    for (const auto& [path, e] : cache_)
      if (!e.generators.empty()) opt.generators.emplace_back(e.structure, e.generators);
    return opt;
  }

  std::vector<Permutation> generators_of(const Structure& s) const {
    for (const auto& [path, e] : cache_)
      if (e.structure.get() == &s) return e.generators;
    return {};
  }

 private:
  struct Entry {
    StructurePtr structure;
    std::vector<Permutation> generators;
    json pebbles = json::array();
  };

  static PebbledStructure with_pebbles(StructurePtr s, const json& pebbles) {
    std::vector<Pebble> p;
    try {
      for (const auto& x : pebbles) {
        if (!x.is_array() || x.size() != 2) throw ParseError("pebbles: expected [color, element]");
        p.push_back({x[0].get<std::string>(), x[1].get<Element>()});
      }
    } catch (const json::exception& e) {
      throw ParseError(std::string("pebbles: ") + e.what());
    }
    return PebbledStructure(std::move(s), std::move(p));
  }

  std::map<std::string, Entry> cache_;
};

struct Instance {
  MsPosition pos;
  json meta = json::object();  // instance.json contents besides the boards
  fs::path dir;
};

fs::path instance_file(const std::string& path) {
  fs::path p(path);
  if (fs::is_directory(p)) p /= "instance.json";
  if (!fs::exists(p)) throw ParseError("no instance file at " + p.string());
  return p;
}

Instance load_instance(const std::string& path, BoardLoader& loader) {
  fs::path file = instance_file(path);
  json j = parse_json(read_file(file.string()));
  Instance inst;
  inst.dir = file.parent_path();
  if (!j.contains("left") || !j.contains("right")) throw ParseError("instance: needs left and right");
  for (const auto& e : j["left"]) inst.pos.left.push_back(loader.from_entry(e, inst.dir));
  for (const auto& e : j["right"]) inst.pos.right.push_back(loader.from_entry(e, inst.dir));
  inst.pos.rounds = j.value("rounds", 0);
  inst.meta = j;
  inst.meta.erase("left");
  inst.meta.erase("right");
  fs::path meta = inst.dir / "meta.json";
  if (fs::exists(meta)) inst.meta["meta"] = parse_json(read_file(meta.string()));
  return inst;
}

std::vector<PebbledStructure> load_boards(const std::vector<std::string>& files, BoardLoader& loader) {
  std::vector<PebbledStructure> out;
  for (const auto& f : files) out.push_back(loader.from_file(f, std::nullopt));
  return out;
}

// Game subcommands ------------------------------------------------------------------------

struct GameArgs {
  std::vector<std::string> left, right;
  std::string instance;
  std::optional<int> rounds;
  std::string certificate;
};

MsPosition game_position(const GameArgs& a, BoardLoader& loader) {
  MsPosition pos;
  if (!a.instance.empty()) {
    if (!a.left.empty() || !a.right.empty()) throw DomainError("use either --instance or --left/--right");
    pos = load_instance(a.instance, loader).pos;
  } else {
    if (a.left.empty() || a.right.empty()) throw DomainError("need --left and --right, or --instance");
    pos.left = load_boards(a.left, loader);
    pos.right = load_boards(a.right, loader);
    if (!a.rounds) throw DomainError("need --rounds");
  }
  if (a.rounds) pos.rounds = *a.rounds;
  if (pos.rounds < 0) throw DomainError("rounds must be nonnegative");
  return pos;
}

Report solve_ef(const GameArgs& a, const Globals& g) {
  BoardLoader loader;
  MsPosition pos = game_position(a, loader);
  if (pos.left.size() != 1 || pos.right.size() != 1) throw DomainError("solve-ef takes one structure per side");
  EfPosition ef{pos.left[0], pos.right[0], pos.rounds};
  EfOptions opt;
  opt.left_generators = loader.generators_of(ef.left.structure());
  opt.right_generators = loader.generators_of(ef.right.structure());
  auto limits = g.limits();
  auto res = ef_winner(ef, limits, opt);
  Report r;
  r.object["command"] = "solve-ef";
  r.object["rounds"] = pos.rounds;
  add_verdict(r, res.winner, limits);
  add_stats(r, res.stats);
  return r;
}

Report solve_ms(const GameArgs& a, const Globals& g) {
  BoardLoader loader;
  MsPosition pos = game_position(a, loader);
  pos.validate();
  MsOptions opt = loader.ms_options();
  opt.certificate = !a.certificate.empty();
  auto limits = g.limits();
  auto res = ms_winner(pos, limits, opt);
  Report r;
  r.object["command"] = "solve-ms";
  r.object["rounds"] = pos.rounds;
  add_verdict(r, res.winner, limits);
  add_stats(r, res.stats);
  if (opt.certificate && res.certificate) {
    Formula f = ms_strategy_to_formula(*res.certificate);
    write_file(a.certificate, print_formula(f) + "\n");
    r.object["certificate"] = a.certificate;
    r.object["certificate_quantifiers"] = f.quantifier_count();
    r.line("certificate " + a.certificate + " quantifiers " + std::to_string(f.quantifier_count()));
  }
  return r;
}

struct StrategyArgs {
  std::string script;
  std::string instance;
  std::optional<int> rounds;
  std::vector<int> domset;  // 1-based graph vertices
  std::string certificate;
};

json require_meta(const Instance& inst) {
  if (!inst.meta.contains("meta")) throw DomainError("script needs meta.json next to the instance (see `reduce`)");
  return inst.meta["meta"];
}

Report check_strategy(const StrategyArgs& a, const Globals& g) {
  BoardLoader loader;
  Instance inst = load_instance(a.instance, loader);
  MsPosition pos = inst.pos;
  if (a.rounds) pos.rounds = *a.rounds;
  Report r;
  r.object["command"] = "check-strategy";
  r.object["script"] = a.script;
  r.object["rounds"] = pos.rounds;

  auto spoiler = [&](const SpoilerScript& script) {
    auto res = run_spoiler_script(script, pos);
    r.object["verdict"] = res.win ? "WIN" : "FAIL";
    r.object["rounds_used"] = res.trace.steps.size();
    r.line(std::string(res.win ? "WIN" : "FAIL") + " rounds_used " + std::to_string(res.trace.steps.size()));
    if (!res.win) {
      r.object["message"] = res.message;
      r.line(res.message);
    } else if (!a.certificate.empty()) {
      Formula f = ms_strategy_to_formula(res.trace);
      write_file(a.certificate, print_formula(f) + "\n");
      r.object["certificate"] = a.certificate;
      r.line("certificate " + a.certificate + " quantifiers " + std::to_string(f.quantifier_count()));
    }
  };

  if (a.script == "mirror-duplicator") {
    auto limits = g.limits();
    auto ok = check_duplicator_strategy(mirror_duplicator(), pos, limits);
    std::string v = !ok ? "UNKNOWN" : *ok ? "WIN" : "FAIL";
    r.object["verdict"] = v;
    r.object["budget"] = budget_json(limits);
    r.line(v + " " + budget_text(limits));
    if (!ok) r.exit_code = kExitUnknown;
    return r;
  }

  json meta = require_meta(inst);
  GadgetOutput gadget = load_gadget(read_file((inst.dir / meta.at("gadget").get<std::string>()).string()));
  if (a.script == "domset-spoiler") {
    if (meta.value("problem", "") != "domset") throw DomainError("domset-spoiler needs a domset instance");
    int k = meta.at("k").get<int>();
    std::vector<int> set;
    if (!a.domset.empty()) {
      for (int v : a.domset) set.push_back(v - 1);
    } else {
      Graph graph = parse_dimacs(read_file((inst.dir / meta.at("graph").get<std::string>()).string()));
      set = oracle::min_domset_witness(graph);
      if (static_cast<int>(set.size()) > k) {
        r.object["verdict"] = "FAIL";
        r.object["message"] = "no dominating set of size at most k";
        r.line("FAIL");
        r.line("no dominating set of size at most " + std::to_string(k));
        return r;
      }
    }
    json ds = json::array();
    for (int v : set) ds.push_back(v + 1);
    r.object["domset"] = ds;
    spoiler(spoiler_script_domset(gadget, k, set));
  } else if (a.script == "skyscraper-spoiler") {
    if (meta.value("problem", "") != "qsat") throw DomainError("skyscraper-spoiler needs a qsat instance");
    QbfInstance phi = parse_qdimacs(read_file((inst.dir / meta.at("qbf").get<std::string>()).string()));
    QbfInstance padded = phi.alternating() ? phi : make_alternating(phi);
    int t = meta.at("t").get<int>();
    auto policy = [padded](const std::vector<int>& assignment) {
      return oracle::best_existential_move(padded, assignment);
    };
    spoiler(spoiler_script_skyscraper(gadget, phi, t, policy));
  } else {
    throw DomainError("unknown script " + a.script);
  }
  return r;
}

// Gadgets and reductions ------------------------------------------------------------------

struct GadgetArgs {
  std::string kind;
  int j = 1;
  std::string graph, qbf;
  int k = 1, t = 1;
  bool plain = false;
  std::string out;
};

Graph read_graph(const std::string& path) { return parse_dimacs(read_file(path)); }
QbfInstance read_qbf(const std::string& path) { return parse_qdimacs(read_file(path)); }

void describe_gadget(Report& r, const GadgetOutput& gadget) {
  const Structure& s = *gadget.structure;
  std::size_t tuples = 0;
  for (std::size_t i = 0; i < s.relation_count(); ++i) tuples += s.relation(i).tuples().size();
  r.object["elements"] = s.size();
  r.object["tuples"] = tuples;
  r.object["generators"] = gadget.automorphism_generators.size();
  r.line("elements " + std::to_string(s.size()) + " tuples " + std::to_string(tuples) + " generators " +
         std::to_string(gadget.automorphism_generators.size()));
}

Report build_gadget(const GadgetArgs& a) {
  GadgetOutput gadget;
  bool colored = !a.plain;
  if (a.kind == "i-np") gadget = build_I_np(a.j, colored);
  else if (a.kind == "j") gadget = build_J(a.j);
  else if (a.kind == "j-prime") gadget = build_J_prime(a.j);
  else if (a.kind == "i-pspace") gadget = build_I_pspace(a.j);
  else if (a.kind == "domset") {
    if (a.graph.empty()) throw DomainError("domset gadget needs --graph");
    gadget = build_domset_structure(read_graph(a.graph), a.k, colored);
  } else if (a.kind == "skyscraper") {
    if (a.qbf.empty()) throw DomainError("skyscraper gadget needs --qbf");
    gadget = build_skyscraper(read_qbf(a.qbf), a.t);
  } else {
    throw DomainError("unknown gadget kind " + a.kind);
  }
  write_file(a.out, save_gadget(gadget));
  Report r;
  r.object["command"] = "build-gadget";
  r.object["kind"] = a.kind;
  r.object["output"] = a.out;
  r.line("wrote " + a.out);
  describe_gadget(r, gadget);
  return r;
}

json board_entry(const PebbledStructure& b) {
  json peb = json::array();
  for (const auto& p : b.pebbles()) peb.push_back({p.color, p.element});
  return {{"file", "gadget.json"}, {"pebbles", peb}};
}

Report write_reduction(const ReductionOutput& red, const fs::path& dir, json meta, const std::string& source_name,
                       const std::string& source_text) {
  fs::create_directories(dir);
  write_file((dir / "gadget.json").string(), save_gadget(red.gadget));
  write_file((dir / source_name).string(), source_text);
  json inst = json::object();
  inst["left"] = json::array();
  inst["right"] = json::array();
  if (red.is_ms()) {
    for (const auto& b : red.ms().left) inst["left"].push_back(board_entry(b));
    for (const auto& b : red.ms().right) inst["right"].push_back(board_entry(b));
    inst["game"] = "ms";
  } else {
    inst["left"].push_back(board_entry(red.ef().left));
    inst["right"].push_back(board_entry(red.ef().right));
    inst["game"] = "ef";
  }
  inst["rounds"] = red.budget.spoiler;
  inst["spoiler_rounds"] = red.budget.spoiler;
  inst["duplicator_rounds"] = red.budget.duplicator;
  write_file((dir / "instance.json").string(), inst.dump(1) + "\n");
  meta["gadget"] = "gadget.json";
  meta["provenance"] = red.provenance;
  write_file((dir / "meta.json").string(), meta.dump(1) + "\n");

  Report r;
  r.object["command"] = "reduce";
  r.object["output"] = dir.string();
  r.object["game"] = inst["game"];
  r.object["spoiler_rounds"] = red.budget.spoiler;
  r.object["duplicator_rounds"] = red.budget.duplicator;
  r.line("wrote " + dir.string() + " (" + inst["game"].get<std::string>() + " game, spoiler_rounds " +
         std::to_string(red.budget.spoiler) + ", duplicator_rounds " + std::to_string(red.budget.duplicator) + ")");
  describe_gadget(r, red.gadget);
  return r;
}

Report reduce_domset(const std::string& graph_path, int k, bool ef, const std::string& out) {
  std::string text = read_file(graph_path);
  Graph graph = parse_dimacs(text);
  auto red = ef ? reduce_domset_to_ef(graph, k) : reduce_domset_to_ms(graph, k);
  return write_reduction(red, out, {{"problem", "domset"}, {"k", k}, {"graph", "graph.dimacs"}}, "graph.dimacs",
                         write_dimacs(graph));
}

Report reduce_qsat(const std::string& qbf_path, int t, const std::string& out) {
  QbfInstance phi = read_qbf(qbf_path);
  auto red = reduce_qsat_to_ms(phi, t);
  return write_reduction(red, out, {{"problem", "qsat"}, {"t", t}, {"qbf", "formula.qdimacs"}}, "formula.qdimacs",
                         write_qdimacs(phi));
}

Report approx_report(const std::string& what, const ApproxResult& res, const SearchLimits& limits) {
  Report r;
  r.object["command"] = "approx " + what;
  r.object["status"] = to_string(res.status);
  r.object["budget"] = budget_json(limits);
  json q = json::array();
  for (const auto& x : res.queries)
    q.push_back({{"parameter", x.parameter}, {"rounds", x.rounds}, {"verdict", upper(to_string(x.verdict))}});
  r.object["queries"] = q;
  if (res.status == ApproxResult::Status::Output) {
    r.object["value"] = res.value;
    r.line("OUTPUT " + std::to_string(res.value) + " " + budget_text(limits));
  } else {
    r.line(upper(to_string(res.status)) + " " + budget_text(limits));
  }
  if (res.status == ApproxResult::Status::Unknown) r.exit_code = kExitUnknown;
  for (const auto& x : res.queries)
    r.line("query parameter " + std::to_string(x.parameter) + " rounds " + std::to_string(x.rounds) + " " +
           upper(to_string(x.verdict)));
  return r;
}

// Logic and corpora -----------------------------------------------------------------------

Report synth_formula(const std::vector<std::string>& left, const std::vector<std::string>& right, int m,
                     const std::string& out, const Globals& g) {
  BoardLoader loader;
  auto l = load_boards(left, loader), rt = load_boards(right, loader);
  auto limits = g.limits();
  auto res = synth_separating(l, rt, m, limits);
  Report r;
  r.object["command"] = "synth-formula";
  r.object["m"] = m;
  r.object["budget"] = budget_json(limits);
  switch (res.status) {
    case SynthResult::Status::Found: {
      std::string f = print_formula(res.formula);
      r.object["verdict"] = "FOUND";
      r.object["formula"] = f;
      r.line("FOUND " + f);
      if (!out.empty()) {
        write_file(out, f + "\n");
        r.object["output"] = out;
      }
      break;
    }
    case SynthResult::Status::None:
      r.object["verdict"] = "NONE";
      r.line("NONE " + budget_text(limits));
      break;
    case SynthResult::Status::Unknown:
      r.object["verdict"] = "UNKNOWN";
      r.line("UNKNOWN " + budget_text(limits));
      r.exit_code = kExitUnknown;
      break;
  }
  add_stats(r, res.stats);
  return r;
}

struct CorpusArgs {
  std::string kind = "synth";
  int count = 200;
  unsigned seed = 1;
  bool exhaustive = false;
  CorpusShape shape;
};

Report corpus(const CorpusArgs& a, const Globals& g) {
  std::vector<MsPosition> positions;
  if (a.exhaustive) {
    positions = exhaustive_ms_corpus(std::min(a.shape.max_universe, 3), a.shape.max_rounds);
  } else {
    std::mt19937 rng(a.seed);
    for (int i = 0; i < a.count; ++i) positions.push_back(random_ms_position(rng, a.shape));
  }
  auto limits = g.limits();
  CorpusReport rep;
  if (a.kind == "synth") rep = cross_check_synth(positions, limits);
  else if (a.kind == "subset") rep = cross_check_subset(positions, limits);
  else throw DomainError("unknown corpus kind " + a.kind);
  Report r;
  r.object["command"] = "corpus";
  r.object["kind"] = a.kind;
  r.object["budget"] = budget_json(limits);
  r.object["instances"] = rep.instances;
  r.object["spoiler"] = rep.spoiler;
  r.object["duplicator"] = rep.duplicator;
  r.object["unknown"] = rep.unknown;
  r.object["disagreements"] = rep.disagreements;
  r.object["certificates"] = rep.certificates;
  r.object["bad_certificates"] = rep.bad_certificates;
  r.object["failures"] = rep.failures;
  std::string v = rep.disagreements || rep.bad_certificates ? "DISAGREE" : rep.unknown ? "UNKNOWN" : "AGREE";
  r.object["verdict"] = v;
  r.line(v + " " + budget_text(limits));
  r.line("instances " + std::to_string(rep.instances) + " spoiler " + std::to_string(rep.spoiler) + " duplicator " +
         std::to_string(rep.duplicator) + " unknown " + std::to_string(rep.unknown));
  r.line("disagreements " + std::to_string(rep.disagreements) + " certificates " + std::to_string(rep.certificates) +
         " bad_certificates " + std::to_string(rep.bad_certificates));
  for (const auto& f : rep.failures) r.line(f);
  r.exit_code = v == "DISAGREE" ? kExitError : v == "UNKNOWN" ? kExitUnknown : kExitOk;
  return r;
}

void emit(const Report& r, const Globals& g, double wall) {
  if (g.json) {
    json o = r.object;
    o["exit_code"] = r.exit_code;
    o["wall_seconds"] = wall;
    std::cout << o.dump(1) << "\n";
  } else {
    for (const auto& l : r.lines) std::cout << l << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Games on finite structures: EF and multi-structural solvers, gadgets, reductions"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Print one JSON result object");
  app.add_option("--max-nodes", g.max_nodes, "Search node budget (default 1e7 or GAMELAB_MAX_NODES)");
  app.add_option("--max-seconds", g.max_seconds, "Time budget per solve (default 60 or GAMELAB_MAX_SECONDS)");
  app.add_option("--threads", g.threads, "Accepted for compatibility; solvers run single-threaded")
      ->check(CLI::PositiveNumber);

  std::function<Report()> run;

  GameArgs ef_args;
  auto* ef = app.add_subcommand("solve-ef", "Decide the EF game between two structures");
  ef->add_option("--left", ef_args.left, "Left structure file")->expected(1);
  ef->add_option("--right", ef_args.right, "Right structure file")->expected(1);
  ef->add_option("--instance", ef_args.instance, "Instance file or directory");
  ef->add_option("--rounds", ef_args.rounds, "Number of rounds");
  ef->callback([&] { run = [&] { return solve_ef(ef_args, g); }; });

  GameArgs ms_args;
  auto* ms = app.add_subcommand("solve-ms", "Decide the multi-structural game");
  ms->add_option("--left", ms_args.left, "Left structure files");
  ms->add_option("--right", ms_args.right, "Right structure files");
  ms->add_option("--instance", ms_args.instance, "Instance file or directory");
  ms->add_option("--rounds", ms_args.rounds, "Number of rounds");
  ms->add_option("--certificate", ms_args.certificate, "Write a separating formula here when Spoiler wins");
  ms->callback([&] { run = [&] { return solve_ms(ms_args, g); }; });

  StrategyArgs st_args;
  auto* st = app.add_subcommand("check-strategy", "Run a scripted strategy on an instance");
  st->add_option("--script", st_args.script, "Strategy name")
      ->required()
      ->check(CLI::IsMember({"domset-spoiler", "skyscraper-spoiler", "mirror-duplicator"}));
  st->add_option("--instance", st_args.instance, "Instance file or directory")->required();
  st->add_option("--rounds", st_args.rounds, "Number of rounds (default from the instance)");
  st->add_option("--domset", st_args.domset, "Dominating set, 1-based vertices (default: a minimum one)");
  st->add_option("--certificate", st_args.certificate, "Write the separating formula of a win here");
  st->callback([&] { run = [&] { return check_strategy(st_args, g); }; });

  GadgetArgs gd_args;
  auto* gd = app.add_subcommand("build-gadget", "Build a gadget structure");
  gd->add_option("--kind", gd_args.kind, "Gadget kind")
      ->required()
      ->check(CLI::IsMember({"i-np", "j", "j-prime", "i-pspace", "domset", "skyscraper"}));
  gd->add_option("--j", gd_args.j, "Gadget level")->check(CLI::PositiveNumber);
  gd->add_option("--graph", gd_args.graph, "Graph in DIMACS edge format");
  gd->add_option("--k", gd_args.k, "Dominating set size")->check(CLI::PositiveNumber);
  gd->add_option("--qbf", gd_args.qbf, "QBF in QDIMACS format");
  gd->add_option("--t", gd_args.t, "Clause threshold")->check(CLI::PositiveNumber);
  auto* colored = gd->add_flag("--colored", "Unary color relations (default)");
  gd->add_flag("--plain", gd_args.plain, "Colors replaced by self-loops on green vertices")->excludes(colored);
  gd->add_option("-o,--output", gd_args.out, "Output file")->required();
  gd->callback([&] { run = [&] { return build_gadget(gd_args); }; });

  auto* red = app.add_subcommand("reduce", "Write a reduction instance directory");
  red->require_subcommand(1);
  std::string red_graph, red_qbf, red_out;
  int red_k = 1, red_t = 1;
  bool red_ef = false;
  auto* red_d = red->add_subcommand("domset", "Dominating set to a game");
  red_d->add_option("--graph", red_graph, "Graph in DIMACS edge format")->required();
  red_d->add_option("--k", red_k, "Dominating set size")->required()->check(CLI::PositiveNumber);
  red_d->add_flag("--ef", red_ef, "EF game instead of the multi-structural game");
  red_d->add_option("-o,--output", red_out, "Output directory")->required();
  red_d->callback([&] { run = [&] { return reduce_domset(red_graph, red_k, red_ef, red_out); }; });
  auto* red_q = red->add_subcommand("qsat", "Max-QSAT threshold to a multi-structural game");
  red_q->add_option("--qbf", red_qbf, "QBF in QDIMACS format")->required();
  red_q->add_option("--t", red_t, "Clause threshold")->required();
  red_q->add_option("-o,--output", red_out, "Output directory")->required();
  red_q->callback([&] { run = [&] { return reduce_qsat(red_qbf, red_t, red_out); }; });

  auto* apx = app.add_subcommand("approx", "Approximation drivers over the exact solver");
  apx->require_subcommand(1);
  std::string apx_graph, apx_qbf;
  bool listing = false;
  auto* apx_d = apx->add_subcommand("domset", "Approximate the minimum dominating set");
  apx_d->add_option("--graph", apx_graph, "Graph in DIMACS edge format")->required();
  apx_d->add_flag("--listing-semantics", listing, "k rounds per query and output k-1");
  apx_d->callback([&] {
    run = [&] {
      auto limits = g.limits();
      auto sem = listing ? DomsetSemantics::Listing : DomsetSemantics::Text;
      return approx_report("domset", approx_domset(read_graph(apx_graph), exact_ms_decider(limits), sem), limits);
    };
  });
  auto* apx_q = apx->add_subcommand("qsat", "Approximate the Max-QSAT value");
  apx_q->add_option("--qbf", apx_qbf, "QBF in QDIMACS format")->required();
  apx_q->callback([&] {
    run = [&] {
      auto limits = g.limits();
      return approx_report("qsat", approx_maxqsat(read_qbf(apx_qbf), exact_ms_decider(limits)), limits);
    };
  });

  auto* orc = app.add_subcommand("oracle", "Brute-force reference values");
  orc->require_subcommand(1);
  std::string orc_graph, orc_qbf;
  std::optional<int> orc_k;
  auto* orc_d = orc->add_subcommand("domset", "Minimum dominating set");
  orc_d->add_option("--graph", orc_graph, "Graph in DIMACS edge format")->required();
  orc_d->add_option("--k", orc_k, "Also answer whether a set of size at most k exists");
  orc_d->callback([&] {
    run = [&] {
      Graph graph = read_graph(orc_graph);
      auto w = oracle::min_domset_witness(graph);
      Report r;
      json set = json::array();
      std::string text;
      for (int v : w) {
        set.push_back(v + 1);
        text += " " + std::to_string(v + 1);
      }
      r.object = {{"command", "oracle domset"}, {"min_domset", w.size()}, {"witness", set}};
      r.line("min_domset " + std::to_string(w.size()));
      r.line("witness" + text);
      if (orc_k) {
        bool yes = static_cast<int>(w.size()) <= *orc_k;
        r.object["has_domset"] = yes;
        r.line(std::string(yes ? "YES" : "NO") + " k " + std::to_string(*orc_k));
      }
      return r;
    };
  });
  auto* orc_q = orc->add_subcommand("qsat", "Max-QSAT value and truth");
  orc_q->add_option("--qbf", orc_qbf, "QBF in QDIMACS format")->required();
  orc_q->callback([&] {
    run = [&] {
      QbfInstance phi = read_qbf(orc_qbf);
      int v = oracle::maxqsat_value(phi);
      bool truth = oracle::qbf_true(phi);
      Report r;
      r.object = {{"command", "oracle qsat"}, {"maxqsat", v}, {"clauses", phi.clauses.size()}, {"true", truth}};
      r.line("maxqsat " + std::to_string(v) + " of " + std::to_string(phi.clauses.size()));
      r.line(truth ? "TRUE" : "FALSE");
      return r;
    };
  });

  std::vector<std::string> syn_left, syn_right;
  int syn_m = 0;
  std::string syn_out;
  auto* syn = app.add_subcommand("synth-formula", "Search for a separating sentence");
  syn->add_option("--left", syn_left, "Left structure files")->required();
  syn->add_option("--right", syn_right, "Right structure files")->required();
  syn->add_option("--m", syn_m, "Quantifier budget")->required()->check(CLI::NonNegativeNumber);
  syn->add_option("-o,--output", syn_out, "Write the formula here");
  syn->callback([&] { run = [&] { return synth_formula(syn_left, syn_right, syn_m, syn_out, g); }; });

  CorpusArgs cp_args;
  auto* cp = app.add_subcommand("corpus", "Cross-check the solver on a generated corpus");
  cp->add_option("--kind", cp_args.kind, "synth: against formula search; subset: against the reference game")
      ->check(CLI::IsMember({"synth", "subset"}));
  cp->add_option("--count", cp_args.count, "Random instances")->check(CLI::PositiveNumber);
  cp->add_option("--seed", cp_args.seed, "Random seed");
  cp->add_flag("--exhaustive", cp_args.exhaustive, "All small digraph pairs instead of random instances");
  cp->add_option("--max-universe", cp_args.shape.max_universe, "Largest universe")->check(CLI::Range(1, 8));
  cp->add_option("--max-boards", cp_args.shape.max_boards, "Boards per side")->check(CLI::Range(1, 4));
  cp->add_option("--max-rounds", cp_args.shape.max_rounds, "Largest round count")->check(CLI::Range(0, 4));
  cp->add_option("--max-pebbles", cp_args.shape.max_pebbles, "Shared pebbles")->check(CLI::Range(0, 3));
  cp->callback([&] { run = [&] { return corpus(cp_args, g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  auto start = std::chrono::steady_clock::now();
  try {
    Report r = run();
    emit(r, g, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return r.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
