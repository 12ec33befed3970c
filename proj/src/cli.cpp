#include "isoperf/cli.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "isoperf/isoperimetry.hpp"

namespace isoperf {

namespace {

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json spec_json(const GroupSpec& spec) {
  return nlohmann::json::parse(spec.to_json_text());
}

nlohmann::json codes_json(const FiniteSubset& d) {
  auto arr = nlohmann::json::array();
  for (const Element& x : d.members()) arr.push_back(x.code());
  return arr;
}

std::int64_t row_cap(const RunConfig& cfg) {
  return cfg.n > 0 ? static_cast<std::int64_t>(cfg.n) : 256;
}

std::string do_growth(const RunConfig& cfg) {
  GrowthTable t = growth_table(build_group(cfg.group), cfg.radius);
  if (cfg.format == RunConfig::Format::Csv) return t.to_csv();
  nlohmann::json j;
  j["group"] = spec_json(cfg.group);
  j["radius"] = t.radius();
  j["gamma"] = t.gamma_all();
  j["sigma"] = sphere_sizes(t);
  j["saturated"] = t.saturated();
  if (t.group_order()) j["order"] = *t.group_order();
  return j.dump() + "\n";
}

std::string do_bounds(const RunConfig& cfg) {
  Group g = build_group(cfg.group);
  GrowthTable t = growth_table(g, cfg.radius);
  std::vector<double> lambdas = cfg.lambdas;
  const std::int64_t t_max = std::min<std::int64_t>(t.gamma(t.radius()), row_cap(cfg));
  if (cfg.format == RunConfig::Format::Csv) {
    std::string out = "t,csc,gromov,u,strong\n";
    for (std::int64_t x = 1; x <= t_max; ++x) {
      BoundReport rep = bound_report(t, g.generators().size(), static_cast<double>(x));
      out += std::to_string(x) + ',' + fmt_real(rep.csc) + ',' + fmt_real(rep.gromov) +
             ',' + fmt_real(rep.u_discrete) + ',' + fmt_real(rep.strong) + '\n';
    }
    return out;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (std::int64_t x = 1; x <= t_max; ++x) {
    BoundReport rep =
        bound_report(t, g.generators().size(), static_cast<double>(x), lambdas);
    nlohmann::json row{{"t", x},
                       {"csc", rep.csc},
                       {"gromov", rep.gromov},
                       {"u", rep.u_discrete},
                       {"strong", rep.strong},
                       {"valid", rep.valid}};
    for (const auto& [lambda, v] : rep.lambda_bounds)
      row["lambda_bounds"][fmt_real(lambda)] = v;
    rows.push_back(std::move(row));
  }
  nlohmann::json j{{"group", spec_json(cfg.group)}, {"rows", std::move(rows)}};
  return j.dump() + "\n";
}

std::string do_transform(const RunConfig& cfg) {
  Group g = build_group(cfg.group);
  GrowthTable t = growth_table(g, cfg.radius);
  const std::int64_t t_max = std::min<std::int64_t>(t.gamma(t.radius()), row_cap(cfg));
  if (cfg.format == RunConfig::Format::Csv) {
    std::string out = "t,u_value,argmax_r,certified\n";
    for (std::int64_t x = 1; x <= t_max; ++x) {
      TransformResult u = u_discrete(t, static_cast<double>(x));
      out += std::to_string(x) + ',' + fmt_real(u.value) + ',' + fmt_real(u.argmax_r) +
             ',' + (u.certified ? "1" : "0") + '\n';
    }
    return out;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (std::int64_t x = 1; x <= t_max; ++x) {
    TransformResult u = u_discrete(t, static_cast<double>(x));
    rows.push_back({{"t", x},
                    {"u_value", u.value},
                    {"argmax_r", u.argmax_r},
                    {"certified", u.certified}});
  }
  nlohmann::json j{{"group", spec_json(cfg.group)}, {"rows", std::move(rows)}};
  return j.dump() + "\n";
}

const char* scope_name(ProfilePoint::Scope s) {
  switch (s) {
    case ProfilePoint::Scope::ExactFinite:
      return "exact_finite";
    case ProfilePoint::Scope::ExactConnectedDp:
      return "exact_connected_dp";
    case ProfilePoint::Scope::UpperBoundOnly:
      return "upper_bound_only";
  }
  return "?";
}

std::string do_profile(const RunConfig& cfg) {
  Group g = build_group(cfg.group);
  std::string csv = "m,boundary_min,scope\n";
  nlohmann::json rows = nlohmann::json::array();
  for (std::int64_t m = 1; m <= cfg.max_size; ++m) {
    if (g.is_finite() && m > *g.order()) break;
    ProfilePoint p = profile(g, m, cfg.max_size);
    if (cfg.format == RunConfig::Format::Csv) {
      csv += std::to_string(m) + ',' + std::to_string(p.boundary_min) + ',' +
             scope_name(p.scope) + '\n';
    } else {
      rows.push_back({{"m", p.m},
                      {"boundary_min", p.boundary_min},
                      {"scope", scope_name(p.scope)},
                      {"witness", codes_json(p.witness)}});
    }
  }
  if (cfg.format == RunConfig::Format::Csv) return csv;
  nlohmann::json j{{"group", spec_json(cfg.group)}, {"rows", std::move(rows)}};
  return j.dump() + "\n";
}

std::string do_folner(const RunConfig& cfg) {
  Group g = build_group(cfg.group);
  FolnerOptions opt;
  opt.table_radius = cfg.radius;
  opt.seed = cfg.seed;
  opt.max_size = cfg.max_size;
  if (cfg.max_size_set && !g.is_finite()) opt.strategy = FolnerStrategy::ProfileDp;
  const double n = cfg.n > 0 ? cfg.n : 1;
  FolnerResult r = folner_value(g, n, opt);
  auto status = [&] {
    switch (r.status) {
      case FolnerResult::Status::Exact:
        return "exact";
      case FolnerResult::Status::Bounds:
        return "bounds";
      case FolnerResult::Status::Infinite:
        return "infinite";
      case FolnerResult::Status::Unresolved:
        return "unresolved";
    }
    return "?";
  }();
  if (cfg.format == RunConfig::Format::Csv) {
    std::string out = "n,status,value,lower,upper\n";
    out += fmt_real(n);
    out += ',';
    out += status;
    out += ',';
    out += r.status == FolnerResult::Status::Exact ? std::to_string(r.value) : "";
    out += ',';
    out += r.status == FolnerResult::Status::Infinite ? "inf" : std::to_string(r.lower);
    out += ',';
    out += r.upper ? std::to_string(*r.upper) : "";
    out += '\n';
    return out;
  }
  nlohmann::json j{{"group", spec_json(cfg.group)},
                   {"n", n},
                   {"status", status},
                   {"lower_certified", r.lower_certified}};
  if (r.status == FolnerResult::Status::Exact) j["value"] = r.value;
  if (r.status != FolnerResult::Status::Infinite) j["lower"] = r.lower;
  if (r.upper) j["upper"] = *r.upper;
  if (r.witness) j["witness"] = codes_json(*r.witness);
  return j.dump() + "\n";
}

std::string do_cheeger(const RunConfig& cfg) {
  Group g = build_group(cfg.group);
  CheegerResult ch = cheeger(g);
  double lambda1 = *g.order() <= 512 ? laplacian_lambda1(g) : -1;
  if (cfg.format == RunConfig::Format::Csv) {
    std::string out = "h_num,h_den,h,lambda1\n";
    out += std::to_string(ch.h.num) + ',' + std::to_string(ch.h.den) + ',' +
           fmt_real(ch.h.value()) + ',' + fmt_real(lambda1) + '\n';
    return out;
  }
  nlohmann::json j{{"group", spec_json(cfg.group)},
                   {"h_num", ch.h.num},
                   {"h_den", ch.h.den},
                   {"h", ch.h.value()},
                   {"witness", codes_json(ch.witness)}};
  if (lambda1 >= 0) j["lambda1"] = lambda1;
  return j.dump() + "\n";
}

std::string do_verify(const RunConfig& cfg, int* violations_out) {
  Group g = build_group(cfg.group);
  nlohmann::json families = nlohmann::json::array();
  nlohmann::json violations = nlohmann::json::array();
  std::int64_t total_violations = 0;

  auto run_family = [&](const char* name, const FamilySpec& spec) {
    VerifyReport rep = verify_main_inequality(g, spec, cfg.radius, cfg.threads);
    families.push_back({{"family", name},
                        {"checked", rep.subsets_checked},
                        {"violations", rep.violations.size()}});
    total_violations += static_cast<std::int64_t>(rep.violations.size());
    for (const Violation& v : rep.violations)
      violations.push_back({{"family", name},
                            {"check", v.check},
                            {"subset", v.subset},
                            {"ratio", v.ratio},
                            {"bound", v.bound}});
  };

  if (g.is_finite() && *g.order() <= 16)
    run_family("all_subsets", {FamilySpec::Kind::AllSubsets, 0, 0, 0});
  run_family("connected", {FamilySpec::Kind::Connected, cfg.max_size, 0, 0});
  int samples = cfg.n > 0 ? static_cast<int>(cfg.n) : 200;
  std::int64_t random_max = g.is_finite()
                                ? std::min<std::int64_t>(cfg.max_size, *g.order())
                                : 2 * cfg.max_size;
  run_family("random_connected",
             {FamilySpec::Kind::RandomConnected, static_cast<int>(random_max), samples,
              cfg.seed});

  GrowthTable t = growth_table(g, cfg.radius);
  nlohmann::json curve = nlohmann::json::array();
  for (std::int64_t x = 1; x <= std::min<std::int64_t>(t.gamma(t.radius()), 64); ++x) {
    BoundReport rep = bound_report(t, g.generators().size(), static_cast<double>(x));
    curve.push_back({{"t", x},
                     {"csc", rep.csc},
                     {"gromov", rep.gromov},
                     {"u", rep.u_discrete},
                     {"strong", rep.strong}});
  }

  nlohmann::json j{{"group", spec_json(cfg.group)},
                   {"families", std::move(families)},
                   {"violations", std::move(violations)},
                   {"bound_curve", std::move(curve)}};
  *violations_out = static_cast<int>(total_violations);
  return j.dump() + "\n";
}

int emit(const std::string& payload, const std::string& path) {
  if (path.empty()) {
    std::cout << payload;
    return std::cout.good() ? 0 : 3;
  }
  std::ofstream out(path, std::ios::binary);
  out << payload;
  out.close();
  return out.good() ? 0 : 3;
}

}  // namespace

int run(const RunConfig& config) {
  try {
    std::string payload;
    int violations = 0;
    switch (config.command) {
      case RunConfig::Command::Growth:
        payload = do_growth(config);
        break;
      case RunConfig::Command::Bounds:
        payload = do_bounds(config);
        break;
      case RunConfig::Command::Transform:
        payload = do_transform(config);
        break;
      case RunConfig::Command::Profile:
        payload = do_profile(config);
        break;
      case RunConfig::Command::Folner:
        payload = do_folner(config);
        break;
      case RunConfig::Command::Cheeger:
        payload = do_cheeger(config);
        break;
      case RunConfig::Command::Verify:
        payload = do_verify(config, &violations);
        break;
    }
    int io = emit(payload, config.out_path);
    if (io != 0) return io;
    return violations > 0 ? 1 : 0;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

namespace {

GroupSpec spec_from_cli(const std::string& kind, const std::string& group_file,
                        const std::vector<std::string>& params) {
  if (!group_file.empty()) {
    std::ifstream in(group_file);
    if (!in) throw std::invalid_argument("cannot open group file: " + group_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return GroupSpec::from_json_text(ss.str());
  }
  std::map<std::string, std::string> kv;
  for (const std::string& p : params) {
    auto eq = p.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--param expects key=value, got: " + p);
    kv[p.substr(0, eq)] = p.substr(eq + 1);
  }
  auto geti = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end())
      throw std::invalid_argument(std::string("missing --param ") + key + "=...");
    return std::stoi(it->second);
  };
  if (kind == "free") return GroupSpec::free_group(geti("q"));
  if (kind == "free_abelian") return GroupSpec::free_abelian(geti("d"));
  if (kind == "dihedral") return GroupSpec::dihedral(geti("n"));
  if (kind == "heisenberg") return GroupSpec::heisenberg();
  if (kind == "lamplighter") return GroupSpec::lamplighter();
  if (kind == "cayley_table")
    throw std::invalid_argument("cayley_table groups must come from --group FILE");
  throw std::invalid_argument("unknown --kind: " + kind);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"growth, boundary and isoperimetric-bound computations on "
               "finitely generated groups"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string kind, group_file, format = "csv";
  std::vector<std::string> params;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--kind", kind, "group family: free, free_abelian, dihedral, "
                                    "heisenberg, lamplighter");
    sub->add_option("--param", params, "family parameter, e.g. q=2, d=2, n=4")
        ->take_all();
    sub->add_option("--group", group_file, "JSON group spec file");
    sub->add_option("--radius", cfg.radius, "growth table radius");
    sub->add_option("--max-size", cfg.max_size, "subset size cap");
    sub->add_option("--n", cfg.n, "folner index / row or sample cap");
    sub->add_option("--lambda", cfg.lambdas, "parametric bound lambda")->take_all();
    sub->add_option("--format", format, "csv or json");
    sub->add_option("--out", cfg.out_path, "output path (default stdout)");
    sub->add_option("--seed", cfg.seed, "seed for randomized families");
    sub->add_option("--threads", cfg.threads, "worker threads")
        ->envname("ISOPERF_THREADS");
  };

  std::map<std::string, RunConfig::Command> commands = {
      {"growth", RunConfig::Command::Growth},
      {"bounds", RunConfig::Command::Bounds},
      {"transform", RunConfig::Command::Transform},
      {"profile", RunConfig::Command::Profile},
      {"folner", RunConfig::Command::Folner},
      {"cheeger", RunConfig::Command::Cheeger},
      {"verify", RunConfig::Command::Verify},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, cmd] : commands) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub);
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    for (const auto& [name, cmd] : commands)
      if (subs[name]->parsed()) {
        cfg.command = cmd;
        cfg.max_size_set = subs[name]->count("--max-size") > 0;
      }
    if (kind.empty() == group_file.empty())
      throw std::invalid_argument("exactly one of --kind or --group is required");
    cfg.group = spec_from_cli(kind, group_file, params);
    if (format == "csv")
      cfg.format = RunConfig::Format::Csv;
    else if (format == "json")
      cfg.format = RunConfig::Format::Json;
    else
      throw std::invalid_argument("--format must be csv or json");
    if (cfg.threads < 1) throw std::invalid_argument("--threads must be >= 1");
  } catch (const std::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  }
  return run(cfg);
}

}  // namespace isoperf
