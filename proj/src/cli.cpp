#include "eulersum/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "eulersum/errors.hpp"
#include "eulersum/expansion.hpp"
#include "eulersum/json_io.hpp"
#include "eulersum/numerics.hpp"
#include "eulersum/reduction.hpp"

namespace eulersum {

namespace {

using nlohmann::json;

struct Config {
  std::string engine = "auto";
  std::vector<std::string> tables;
  std::string output = "plain";
  double tol = 1e-8;
  bool trace = false;
  bool verify_table = false;
  bool require_tables = false;
  unsigned jobs = 1;
  std::string file;
  std::string against;
  std::vector<std::string> inputs;
};

std::string short_real(const Real& x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << x;
  return os.str();
}

LinComb resolve_sums(std::string_view text) { return expand_theorem1(parse_index(text)); }

/// Relative table paths are looked up under EULERSUM_TABLE_DIR first.
std::filesystem::path locate_table(const std::string& name) {
  std::filesystem::path p(name);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("EULERSUM_TABLE_DIR"); dir && *dir) {
      auto candidate = std::filesystem::path(dir) / p;
      if (std::filesystem::exists(candidate)) return candidate;
    }
  }
  return p;
}

void report_rejections(const std::string& name, const TableLoadResult& r, std::ostream& err) {
  for (const auto& rej : r.rejected)
    err << "table " << name << ": line " << rej.line << (rej.lhs.empty() ? "" : " (" + rej.lhs + ")") << ": "
        << rej.reason << '\n';
}

std::vector<IdentityTable> load_tables(const Config& cfg, std::ostream& err) {
  std::vector<IdentityTable> tables;
  for (const auto& name : cfg.tables) {
    try {
      TableLoadOptions opts;
      opts.verify = cfg.verify_table;
      opts.tol = std::max(cfg.tol, 1e-10);
      auto r = load_identity_table_file(locate_table(name), opts);
      report_rejections(name, r, err);
      if (r.table.entries.empty() && !r.rejected.empty()) continue;
      tables.push_back(std::move(r.table));
    } catch (const TableError& e) {
      err << "table " << name << ": " << e.what() << '\n';
    }
  }
  if (cfg.require_tables && tables.empty()) throw TableError("no usable identity table");
  return tables;
}

LinComb expansion_for(const EulerSumIndex& idx, const Config& cfg, std::string& engine_used) {
  ExpansionOptions opts;
  opts.jobs = std::max(1u, cfg.jobs);
  if (cfg.engine == "t2") {
    if (!theorem2_applicable(idx)) throw PreconditionError("engine t2 needs unbarred exponents >= 2");
    engine_used = "t2";
    return expand_theorem2(idx);
  }
  engine_used = "t1";
  return expand_theorem1(idx, opts);
}

json index_json(const EulerSumIndex& idx) { return json::parse(render_index(idx, RenderStyle::Json)); }

json base_json(const EulerSumIndex& idx, const LinComb& x, const std::string& engine) {
  return {{"index", index_json(idx)},
          {"weight", idx.weight()},
          {"degree", idx.degree()},
          {"conditionally_convergent", idx.conditionally_convergent()},
          {"engine", engine},
          {"term_count", x.size()},
          {"terms", lincomb_to_json(x)}};
}

void print_lincomb(const EulerSumIndex& idx, const LinComb& x, const Config& cfg, std::ostream& out) {
  if (cfg.output == "latex") out << render_index(idx, RenderStyle::Latex) << " = " << render_latex(x) << '\n';
  else out << render_index(idx, RenderStyle::Plain) << " = " << render_plain(x) << '\n';
}

int cmd_expand(const Config& cfg, std::ostream& out, std::ostream& err) {
  auto idx = parse_index(cfg.inputs.at(0));
  std::string engine;
  LinComb x = expansion_for(idx, cfg, engine);
  if (cfg.engine == "auto" && theorem2_applicable(idx)) {
    auto a = eval_lincomb(x, 1e-10);
    auto b = eval_lincomb(expand_theorem2(idx), 1e-10);
    if (abs(a.value - b.value) > a.tail_bound + b.tail_bound + Real(1e-8)) {
      err << "theorem 1 and theorem 2 expansions disagree by " << short_real(abs(a.value - b.value)) << '\n';
      return kExitFail;
    }
    engine = "t1+t2";
  }
  if (cfg.output == "json") out << base_json(idx, x, engine).dump() << '\n';
  else print_lincomb(idx, x, cfg, out);
  return kExitOk;
}

int cmd_reduce(const Config& cfg, std::ostream& out, std::ostream& err) {
  auto idx = parse_index(cfg.inputs.at(0));
  auto tables = load_tables(cfg, err);
  std::string engine;
  auto r = reduce(expansion_for(idx, cfg, engine), tables);
  if (cfg.output == "json") {
    json j = base_json(idx, r.value, engine);
    j["unresolved"] = json::array();
    for (const auto& a : r.unresolved) j["unresolved"].push_back(render_plain(a));
    if (cfg.trace) {
      j["trace"] = json::array();
      for (const auto& s : r.trace) j["trace"].push_back({{"rule", s.rule}, {"target", s.target}});
      j["trace_truncated"] = r.trace_truncated;
    }
    out << j.dump() << '\n';
    return kExitOk;
  }
  print_lincomb(idx, r.value, cfg, out);
  if (!r.unresolved.empty()) {
    out << "unresolved:";
    for (const auto& a : r.unresolved) out << ' ' << (cfg.output == "latex" ? render_latex(a) : render_plain(a));
    out << '\n';
  }
  if (cfg.trace) {
    for (const auto& s : r.trace) out << "trace: " << s.rule << (s.target.empty() ? "" : " " + s.target) << '\n';
    if (r.trace_truncated) out << "trace: (truncated)\n";
  }
  return kExitOk;
}

struct Comparison {
  std::string label;
  NumericResult result;
};

struct VerifyReport {
  EulerSumIndex idx;
  NumericResult direct;
  std::vector<Comparison> others;
  Real worst = 0;
  bool pass = true;
};

VerifyReport verify_one(const std::string& index_text, const std::string& against, const Config& cfg,
                        const std::vector<IdentityTable>& tables) {
  VerifyReport rep;
  rep.idx = parse_index(index_text);
  const double eval_tol = std::max(cfg.tol / 10, 1e-10);
  rep.direct = eval_euler_sum(rep.idx, eval_tol);
  std::string engine;
  LinComb x = expansion_for(rep.idx, cfg, engine);
  rep.others.push_back({"expansion", eval_lincomb(x, eval_tol)});
  if (!tables.empty()) rep.others.push_back({"reduction", eval_lincomb(reduce(x, tables).value, eval_tol)});
  if (!against.empty()) rep.others.push_back({"against", eval_lincomb(parse_lincomb(against, resolve_sums), eval_tol)});
  for (const auto& c : rep.others) {
    Real d = abs(c.result.value - rep.direct.value);
    rep.worst = std::max(rep.worst, d);
    if (d > c.result.tail_bound + rep.direct.tail_bound + Real(cfg.tol)) rep.pass = false;
  }
  return rep;
}

json value_json(const NumericResult& r) {
  return {{"value", format_real(r.value, 30)}, {"bound", short_real(r.tail_bound)}, {"terms", r.terms_used}};
}

void print_report(const VerifyReport& rep, const Config& cfg, std::ostream& out) {
  if (cfg.output == "json") {
    json j = {{"index", index_json(rep.idx)},
              {"conditionally_convergent", rep.idx.conditionally_convergent()},
              {"direct", value_json(rep.direct)},
              {"discrepancy", short_real(rep.worst)},
              {"tol", cfg.tol},
              {"pass", rep.pass}};
    for (const auto& c : rep.others) j[c.label] = value_json(c.result);
    out << j.dump() << '\n';
    return;
  }
  out << "index        " << render_index(rep.idx, RenderStyle::Plain) << '\n';
  out << "direct       " << format_real(rep.direct.value, 30) << " +- " << short_real(rep.direct.tail_bound) << '\n';
  for (const auto& c : rep.others)
    out << std::left << std::setw(13) << c.label << format_real(c.result.value, 30) << " +- "
        << short_real(c.result.tail_bound) << '\n';
  out << "discrepancy  " << short_real(rep.worst) << '\n' << (rep.pass ? "PASS" : "FAIL") << '\n';
}

struct BatchLine {
  std::string index;
  std::string against;
};

/// One index per line, optionally `INDEX = EXPR`; '#' starts a comment.
std::vector<BatchLine> read_batch(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  std::vector<BatchLine> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    BatchLine b;
    if (auto eq = line.find('='); eq != std::string::npos) {
      b.index = line.substr(0, eq);
      b.against = line.substr(eq + 1);
    } else {
      b.index = line;
    }
    lines.push_back(std::move(b));
  }
  return lines;
}

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream& err) {
  auto tables = load_tables(cfg, err);
  if (cfg.file.empty()) {
    if (cfg.inputs.empty()) throw ParseError("verify needs an index or --file", 0);
    auto rep = verify_one(cfg.inputs[0], cfg.against, cfg, tables);
    print_report(rep, cfg, out);
    return rep.pass ? kExitOk : kExitFail;
  }

  auto lines = read_batch(cfg.file);
  std::vector<std::string> verdicts(lines.size());
  std::vector<bool> ok(lines.size(), false);
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(lines.size())));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < lines.size(); i += workers) {
      try {
        auto rep = verify_one(lines[i].index, lines[i].against, cfg, tables);
        ok[i] = rep.pass;
        verdicts[i] = std::string(rep.pass ? "PASS " : "FAIL ") + render_index(rep.idx, RenderStyle::Plain) + " " +
                      short_real(rep.worst);
      } catch (const std::exception& e) {
        verdicts[i] = "ERROR " + lines[i].index + " " + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  for (auto& t : pool) t.join();
  for (const auto& v : verdicts) out << v << '\n';
  return std::all_of(ok.begin(), ok.end(), [](bool b) { return b; }) ? kExitOk : kExitFail;
}

int cmd_eval(const Config& cfg, std::ostream& out, std::ostream&) {
  std::string text;
  if (!cfg.file.empty()) {
    std::ifstream in(cfg.file);
    if (!in) throw PreconditionError("cannot open " + cfg.file);
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else if (!cfg.inputs.empty()) {
    text = cfg.inputs[0];
  } else {
    throw ParseError("eval needs an expression or --file", 0);
  }
  LinComb x;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad JSON: ") + e.what(), 0);
    }
    x = lincomb_from_json(j.is_object() ? j.at("terms") : j);
  } else {
    x = parse_lincomb(text, resolve_sums);
  }
  auto r = eval_lincomb(x, std::max(cfg.tol / 10, 1e-10));
  if (cfg.output == "json") out << value_json(r).dump() << '\n';
  else out << format_real(r.value, 30) << " +- " << short_real(r.tail_bound) << '\n';
  return kExitOk;
}

int cmd_table_check(const Config& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names = cfg.inputs;
  names.insert(names.end(), cfg.tables.begin(), cfg.tables.end());
  if (names.empty()) throw ParseError("table-check needs at least one table", 0);
  bool clean = true;
  for (const auto& name : names) {
    TableLoadOptions opts;
    opts.verify = cfg.verify_table;
    opts.tol = std::max(cfg.tol, 1e-10);
    try {
      auto r = load_identity_table_file(locate_table(name), opts);
      report_rejections(name, r, err);
      out << name << ": " << r.table.entries.size() << " accepted, " << r.rejected.size() << " rejected, max weight "
          << r.table.max_weight << '\n';
      if (!r.rejected.empty()) clean = false;
    } catch (const TableError& e) {
      err << "table " << name << ": " << e.what() << '\n';
      clean = false;
    }
  }
  return clean ? kExitOk : kExitTables;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Euler sums: expansion into multiple zeta values, reduction and numeric verification", "eulersum"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--engine", cfg.engine, "expansion engine")->check(CLI::IsMember({"t1", "t2", "auto"}));
    sub->add_option("--table", cfg.tables, "identity table (JSON lines), repeatable")->allow_extra_args(false);
    sub->add_option("--output", cfg.output, "output format")->check(CLI::IsMember({"plain", "latex", "json"}));
    sub->add_option("--tol", cfg.tol, "numeric tolerance")->check(CLI::Range(1e-10, 1e-3));
    sub->add_flag("--trace", cfg.trace, "print the rewrite trace");
    sub->add_flag("--verify-table", cfg.verify_table, "check table entries numerically");
    sub->add_flag("--require-tables", cfg.require_tables, "fail when no table loads");
    sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  };

  auto* expand = app.add_subcommand("expand", "expand an Euler sum into (alternating) MZVs");
  auto* reduce_cmd = app.add_subcommand("reduce", "expand, then reduce with rules and tables");
  auto* verify = app.add_subcommand("verify", "compare direct summation with the expansion");
  auto* eval = app.add_subcommand("eval", "evaluate an expression or a JSON expansion");
  auto* check = app.add_subcommand("table-check", "validate identity tables");
  for (auto* sub : {expand, reduce_cmd, verify, eval, check}) common(sub);
  expand->add_option("index", cfg.inputs, "e.g. S(1,1,-3)")->required()->expected(1);
  reduce_cmd->add_option("index", cfg.inputs, "e.g. S(1,2,3)")->required()->expected(1);
  verify->add_option("index", cfg.inputs, "e.g. S(2,6)")->expected(0, 1);
  verify->add_option("--against", cfg.against, "closed form to compare with; S(...) terms are expanded");
  verify->add_option("--file", cfg.file, "batch file, one index per line");
  eval->add_option("expr", cfg.inputs, "expression or JSON")->expected(0, 1);
  eval->add_option("--file", cfg.file, "read the expression from a file");
  check->add_option("tables", cfg.inputs, "table files");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (expand->parsed()) return cmd_expand(cfg, out, err);
    if (reduce_cmd->parsed()) return cmd_reduce(cfg, out, err);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (eval->parsed()) return cmd_eval(cfg, out, err);
    return cmd_table_check(cfg, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const DivergenceError& e) {
    err << "divergent: " << e.what() << '\n';
    return kExitDivergent;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const SizeError& e) {
    err << "precondition: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const TableError& e) {
    err << "tables: " << e.what() << '\n';
    return kExitTables;
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << " (achieved bound " << e.achieved_bound() << ")\n";
    return kExitCapacity;
  }
}

}  // namespace eulersum
