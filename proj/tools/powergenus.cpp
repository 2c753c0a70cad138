// Command-line front end: groups, power graphs, genus search, verdicts and
// the table/rule reports.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "powergenus/catalog.hpp"
#include "powergenus/classifier.hpp"
#include "powergenus/embedding.hpp"
#include "powergenus/error.hpp"
#include "powergenus/graph.hpp"
#include "powergenus/search.hpp"

namespace {

using pg::Json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBounds = 2;

struct RunConfig {
  std::uint64_t budget_nodes = 100'000'000;
  double budget_seconds = 600.0;
  unsigned jobs = 1;
  std::string format = "text";
  std::string output;
  std::string catalog_path;
  bool no_timestamp = false;

  pg::SearchBudget budget() const {
    pg::SearchBudget b;
    b.max_nodes = budget_nodes;
    b.max_seconds = budget_seconds;
    b.jobs = jobs;
    return b;
  }
  bool records() const { return format == "records"; }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw pg::InvalidParameter("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void timestamp(const RunConfig& cfg, std::ostream& os) {
  if (cfg.no_timestamp) return;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::ostringstream t;
  t << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
  if (cfg.records()) os << Json{{"generated", t.str()}}.dump() << '\n';
  else os << "# generated " << t.str() << '\n';
}

const pg::Catalog& load_catalog(const RunConfig& cfg) {
  static pg::Catalog custom;
  if (cfg.catalog_path.empty()) return pg::Catalog::builtin();
  custom = pg::Catalog::load(cfg.catalog_path);
  return custom;
}

pg::FiniteGroup resolve(const std::string& target, const pg::Catalog& catalog) {
  if (catalog.contains(target)) return catalog.get(target);
  return pg::build_recipe(target, &catalog);
}

/// (order, index) from "[n,m]"; descriptive labels sort after numbered ones.
std::pair<std::size_t, std::size_t> label_key(const std::string& label, std::size_t order) {
  std::size_t n = 0, m = 0;
  char c1 = 0, c2 = 0, c3 = 0;
  std::istringstream is(label);
  if (is >> c1 >> n >> c2 >> m >> c3 && c1 == '[' && c2 == ',' && c3 == ']') return {n, m};
  return {order, std::numeric_limits<std::size_t>::max()};
}

// ---------------------------------------------------------------------------

int cmd_group_info(const RunConfig& cfg, const std::string& target) {
  const auto& catalog = load_catalog(cfg);
  const auto g = resolve(target, catalog);
  Output out(cfg.output);
  timestamp(cfg, out.os());
  const auto spec = pg::order_spectrum(g);
  const auto six = pg::six_profile(g);
  if (cfg.records()) {
    Json j;
    j["target"] = target;
    j["order"] = g.order();
    j["spectrum"] = spec.to_string();
    j["element_orders"] = spec.set_string();
    j["six_profile"] = six.to_string();
    j["involutions"] = pg::count_involutions(g);
    j["center"] = pg::center(g).size();
    out.os() << j.dump() << '\n';
  } else {
    out.os() << "target       " << target << '\n'
             << "order        " << g.order() << '\n'
             << "spectrum     " << spec.set_string() << "  " << spec.to_string() << '\n'
             << "six-profile  " << six.to_string() << '\n'
             << "involutions  " << pg::count_involutions(g) << '\n'
             << "center       " << pg::center(g).size() << '\n';
  }
  return kExitOk;
}

int cmd_powergraph(const RunConfig& cfg, const std::string& target, bool dot) {
  const auto& catalog = load_catalog(cfg);
  const auto g = resolve(target, catalog);
  const auto pg_graph = pg::power_graph(g);
  Output out(cfg.output);
  if (dot) pg::write_dot(out.os(), pg_graph, "power_graph");
  else pg::write_edge_list(out.os(), pg_graph);
  return kExitOk;
}

int cmd_genus(const RunConfig& cfg, const std::string& path, bool nonorientable,
              std::string cert_path) {
  std::ifstream in(path);
  if (!in) throw pg::InvalidParameter("cannot open " + path);
  const auto g = pg::read_edge_list(in);
  const auto r = nonorientable ? pg::crosscap_exact(g, cfg.budget()) : pg::genus_exact(g, cfg.budget());
  if (cert_path.empty()) cert_path = path + ".cert";
  if (r.upper_certificate) {
    std::ofstream cert(cert_path);
    if (!cert) throw pg::InvalidParameter("cannot write " + cert_path);
    pg::write_certificate(cert, pg::make_certificate(g, r));
  }
  Output out(cfg.output);
  timestamp(cfg, out.os());
  const std::string surface = nonorientable ? "nonorientable" : "orientable";
  if (cfg.records()) {
    Json j;
    j["graph"] = path;
    j["surface"] = surface;
    j["result"] = r.describe();
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    j["lower_certificate"] = pg::to_string(r.lower_certificate);
    j["budget_exhausted"] = r.budget_exhausted;
    j["nodes"] = r.nodes;
    j["certificate"] = r.upper_certificate ? Json(cert_path) : Json(nullptr);
    out.os() << j.dump() << '\n';
  } else {
    out.os() << r.describe() << '\n'
             << "surface      " << surface << '\n'
             << "lower        " << r.lower << " (" << pg::to_string(r.lower_certificate) << ")\n"
             << "upper        " << r.upper << '\n'
             << "nodes        " << r.nodes << '\n';
    if (r.budget_exhausted) out.os() << "budget       exhausted; lower bound not proved\n";
    if (r.upper_certificate) out.os() << "certificate  " << cert_path << '\n';
  }
  return r.exact() ? kExitOk : kExitBounds;
}

int cmd_verify(const RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pg::InvalidParameter("cannot open " + path);
  const auto c = pg::read_certificate(in);
  const auto v = pg::verify_certificate(c);
  Output out(cfg.output);
  out.os() << (v.ok ? "OK" : "FAILED") << ": " << v.message << " (faces " << v.trace.faces
           << ", genus " << v.implied_genus << ")\n";
  return v.ok ? kExitOk : kExitError;
}

struct Classified {
  std::string label;
  std::size_t order = 0;
  std::string text;
  Json record;
  bool error = false;
  bool bounds_only = false;
};

Classified classify_one(const std::string& label, const pg::FiniteGroup& g,
                        const pg::Catalog& catalog, const RunConfig& cfg, bool cross) {
  Classified c;
  c.label = label;
  c.order = g.order();
  try {
    const auto o = pg::classify_orientable(g, catalog);
    const auto n = pg::classify_nonorientable(g, catalog);
    c.record = pg::verdict_record(label, g, o, n);
    std::ostringstream t;
    t << label << "  orientable " << o.category();
    if (o.table1_label) t << " " << *o.table1_label;
    if (o.orientable == pg::GenusClass::other_with_bounds || o.orientable == pg::GenusClass::at_least_three)
      t << " [" << o.lower << "," << (o.upper ? std::to_string(*o.upper) : "-") << "]";
    t << "  nonorientable " << n.category() << '\n';
    for (const auto* v : {&o, &n})
      for (const auto& s : v->trail)
        t << "    " << (v == &o ? "or " : "no ") << s.rule_id << " " << s.inputs.dump() << " -> "
          << s.conclusion << '\n';
    if (cross) {
      const auto cv = pg::cross_validate(g, cfg.budget(), catalog);
      const auto& e = cv.engine;
      Json x;
      x["orientable"] = {{"lower", e.orientable_lower}, {"upper", e.orientable_upper},
                         {"exact", e.orientable_exact}, {"agreement", pg::to_string(cv.orientable)}};
      x["nonorientable"] = {{"lower", e.nonorientable_lower},
                            {"upper", e.nonorientable_upper},
                            {"exact", e.nonorientable_exact},
                            {"agreement", pg::to_string(cv.nonorientable)}};
      x["blocks"] = cv.blocks.size();
      c.record["engine"] = x;
      t << "    engine orientable [" << e.orientable_lower << "," << e.orientable_upper << "] "
        << pg::to_string(cv.orientable) << "; nonorientable [" << e.nonorientable_lower << ","
        << e.nonorientable_upper << "] " << pg::to_string(cv.nonorientable) << '\n';
      c.error = cv.orientable == pg::Agreement::mismatch || cv.nonorientable == pg::Agreement::mismatch;
      c.bounds_only = cv.budget_exhausted;
    }
    c.text = t.str();
  } catch (const pg::Error& ex) {
    c.error = true;
    c.record = Json{{"label", label}, {"error", ex.what()}};
    c.text = label + "  error: " + ex.what() + '\n';
  }
  return c;
}

int cmd_classify(const RunConfig& cfg, const std::string& target, bool all, bool cross) {
  const auto& catalog = load_catalog(cfg);
  std::vector<std::string> labels;
  if (all) {
    for (const auto& e : catalog.entries()) labels.push_back(e.label);
  } else {
    if (target.empty()) throw pg::InvalidParameter("classify needs a target or --all-catalog");
    labels.push_back(target);
  }
  std::vector<Classified> results(labels.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i; (i = next++) < labels.size();)
      results[i] = classify_one(labels[i], resolve(labels[i], catalog), catalog, cfg, cross);
  };
  std::vector<std::thread> pool;
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.jobs, labels.size()));
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::stable_sort(results.begin(), results.end(), [](const Classified& a, const Classified& b) {
    return label_key(a.label, a.order) < label_key(b.label, b.order);
  });

  Output out(cfg.output);
  timestamp(cfg, out.os());
  bool error = false, bounds = false;
  for (const auto& r : results) {
    if (cfg.records()) out.os() << r.record.dump() << '\n';
    else out.os() << r.text;
    error = error || r.error;
    bounds = bounds || r.bounds_only;
  }
  return error ? kExitError : bounds ? kExitBounds : kExitOk;
}

int report_table1(const RunConfig& cfg, std::ostream& os) {
  const auto& catalog = load_catalog(cfg);
  struct Row {
    std::string label;
    std::size_t order;
    std::string spectrum;
  };
  std::vector<Row> rows;
  for (const auto& e : catalog.entries()) {
    const auto g = catalog.get(e.label);
    if (g.order() > pg::kDefaultOrderCap) continue;
    if (pg::classify_orientable(g, catalog).orientable == pg::GenusClass::two)
      rows.push_back({e.label, g.order(), e.expected_spectrum.set_string()});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return label_key(a.label, a.order) < label_key(b.label, b.order);
  });
  for (const auto& r : rows) {
    if (cfg.records())
      os << Json{{"label", r.label}, {"order", r.order}, {"spectrum", r.spectrum}}.dump() << '\n';
    else
      os << std::left << std::setw(10) << r.label << std::setw(6) << r.order << r.spectrum << '\n';
  }
  return kExitOk;
}

int report_table2(const RunConfig& cfg, std::ostream& os) {
  const auto& catalog = load_catalog(cfg);
  const auto& column = pg::table2_spectrum_column();
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Json>> rows;
  bool ok = true;
  for (const auto& e : catalog.entries()) {
    const auto g = catalog.get(e.label);
    if (!pg::three_hexagon_conditions(g)) continue;
    const auto spec = pg::order_spectrum(g).set_string();
    const auto it = column.find(e.label);
    const std::string listed = it == column.end() ? "-" : it->second;
    ok = ok && listed == spec;
    Json j;
    j["label"] = e.label;
    j["spectrum"] = spec;
    j["six_profile"] = pg::six_profile(g).to_string();
    j["a"] = true;
    j["b"] = true;
    j["c"] = true;
    j["listed_spectrum"] = listed;
    j["match"] = listed == spec;
    rows.emplace_back(label_key(e.label, g.order()), j);
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (!cfg.records())
    os << std::left << std::setw(10) << "label" << std::setw(14) << "spectrum" << std::setw(16)
       << "six-profile" << "a b c  listed\n";
  for (const auto& [key, j] : rows) {
    if (cfg.records()) {
      os << j.dump() << '\n';
      continue;
    }
    os << std::left << std::setw(10) << j["label"].get<std::string>() << std::setw(14)
       << j["spectrum"].get<std::string>() << std::setw(16) << j["six_profile"].get<std::string>()
       << "y y y  " << j["listed_spectrum"].get<std::string>()
       << (j["match"].get<bool>() ? "" : "  MISMATCH") << '\n';
  }
  return ok && rows.size() == column.size() ? kExitOk : kExitError;
}

int report_rule(const RunConfig& cfg, const std::string& id, std::ostream& os) {
  const auto rep = pg::verify_rule(id, load_catalog(cfg), cfg.budget());
  if (cfg.records()) {
    Json j;
    j["rule"] = rep.rule_id;
    j["status"] = pg::to_string(rep.status);
    j["scanned"] = rep.scanned;
    j["unit"] = rep.unit;
    j["witnesses"] = rep.witnesses;
    j["notes"] = rep.notes;
    os << j.dump() << '\n';
  } else {
    os << rep.summary() << '\n';
    for (const auto& w : rep.witnesses) os << "  witness " << w << '\n';
    for (const auto& n : rep.notes) os << "  note " << n << '\n';
  }
  switch (rep.status) {
    case pg::RuleStatus::pass: return kExitOk;
    case pg::RuleStatus::inconclusive: return kExitBounds;
    case pg::RuleStatus::fail: return kExitError;
  }
  return kExitError;
}

int cmd_report(const RunConfig& cfg, const std::string& what, const std::string& id) {
  Output out(cfg.output);
  if (what == "rules") {
    for (const auto& r : pg::rule_registry()) out.os() << r.id << "  " << r.statement << '\n';
    return kExitOk;
  }
  timestamp(cfg, out.os());
  if (what == "table1") return report_table1(cfg, out.os());
  if (what == "table2") return report_table2(cfg, out.os());
  if (what == "lemma" || what == "rule") {
    if (id.empty()) throw pg::UnknownRule("missing rule id");
    return report_rule(cfg, id, out.os());
  }
  throw pg::InvalidParameter("unknown report " + what);
}

int cmd_catalog(const RunConfig& cfg, const std::string& action) {
  const auto& catalog = load_catalog(cfg);
  Output out(cfg.output);
  if (action == "dump") {
    catalog.dump(out.os());
    return kExitOk;
  }
  const auto rep = catalog.validate_all();
  for (const auto& f : rep.failures)
    out.os() << "FAIL " << f.label << " " << f.check << ": " << f.message << '\n';
  out.os() << (rep.ok() ? "OK" : "FAILED") << ": " << rep.entries_checked << " entries, "
           << rep.failures.size() << " failures\n";
  return rep.ok() ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power graphs of finite groups and their surface embeddings"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--budget-nodes", cfg.budget_nodes, "Search node cap per genus level")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget-seconds", cfg.budget_seconds, "Search time cap per genus level")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "records"}));
  app.add_option("-o,--output", cfg.output, "Output file (default stdout)");
  app.add_option("--catalog", cfg.catalog_path, "Catalog file (default built-in)");
  app.add_flag("--no-timestamp", cfg.no_timestamp, "Omit the timestamp header");

  std::string target, file, cert, what, id, action;
  bool dot = false, edges = false, nonorientable = false, orientable = false, all = false,
       cross = false;

  auto* info = app.add_subcommand("group-info", "Order, spectrum, six-profile, involutions, center");
  info->add_option("target", target, "Catalog label or recipe")->required();

  auto* graph = app.add_subcommand("powergraph", "Export the power graph");
  graph->add_option("target", target, "Catalog label or recipe")->required();
  auto* dot_flag = graph->add_flag("--dot", dot, "Graphviz output");
  graph->add_flag("--edges", edges, "Edge list output (default)")->excludes(dot_flag);

  auto* genus = app.add_subcommand("genus", "Exact genus search on an edge-list file");
  genus->add_option("file", file, "Edge list")->required()->check(CLI::ExistingFile);
  auto* nf = genus->add_flag("--nonorientable", nonorientable, "Nonorientable genus");
  genus->add_flag("--orientable", orientable, "Orientable genus (default)")->excludes(nf);
  genus->add_option("--certificate", cert, "Certificate output path (default FILE.cert)");

  auto* verify = app.add_subcommand("verify", "Re-trace an embedding certificate");
  verify->add_option("file", file, "Certificate")->required()->check(CLI::ExistingFile);

  auto* classify = app.add_subcommand("classify", "Genus verdicts with rule trails");
  classify->add_option("target", target, "Catalog label or recipe");
  classify->add_flag("--all-catalog", all, "Every catalog entry");
  classify->add_flag("--cross-validate", cross, "Compare with the block-wise engine search");

  auto* report = app.add_subcommand("report", "table1 | table2 | lemma <rule-id> | rules");
  report->add_option("what", what)->required()->check(
      CLI::IsMember({"table1", "table2", "lemma", "rule", "rules"}));
  report->add_option("id", id, "Rule id for lemma");

  auto* cat = app.add_subcommand("catalog", "dump | validate");
  cat->add_option("action", action)->required()->check(CLI::IsMember({"dump", "validate"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  try {
    if (*info) return cmd_group_info(cfg, target);
    if (*graph) return cmd_powergraph(cfg, target, dot);
    if (*genus) return cmd_genus(cfg, file, nonorientable, cert);
    if (*verify) return cmd_verify(cfg, file);
    if (*classify) return cmd_classify(cfg, target, all, cross);
    if (*report) return cmd_report(cfg, what, id);
    if (*cat) return cmd_catalog(cfg, action);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
