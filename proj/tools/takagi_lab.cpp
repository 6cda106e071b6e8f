// takagi_lab: command-line front end for the takagi library.
//
// Exit codes: 0 success, 1 guard or computation failure, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "takagi/takagi.hpp"

using namespace takagi;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "csv";
  std::string output;
  int threads = 0;
};

struct Args {
  std::string H;
  std::string coeffs = "plus";
  std::string t;
  std::string p;
  std::string lambda;
  std::string method;
  std::string what = "values";
  double eps = 1e-10;
  double factor = 1.0;
  int level = -1;
  int n_max = -1;
  int max_level = kMaxInMemoryLevel;
  bool streaming = false;
  bool rows = false;
  std::uint64_t samples = MonteCarloOptions{}.samples;
  std::uint64_t seed = MonteCarloOptions{}.seed;
  int truncation = 0;
};

template <typename F>
auto usage(const char* what, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  } catch (const std::domain_error& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

Hurst parseHurst(const Args& a) {
  if (a.H.empty()) throw UsageError("--H is required");
  return usage("--H", [&] { return Hurst::parse(a.H); });
}

SignedTLFunction parseFunction(const Args& a) {
  const Hurst h = parseHurst(a);
  return SignedTLFunction(h, usage("--coeffs", [&] { return CoefficientSource::parse(a.coeffs); }));
}

Rational parseUnitRational(const std::string& text, const char* name) {
  const Rational r = usage(name, [&] { return parseRational(text); });
  if (r < 0 || r > 1) throw UsageError(std::string(name) + " must lie in [0,1]");
  return r;
}

MonteCarloOptions monteCarlo(const Args& a) { return {a.samples, a.seed, a.truncation}; }

std::vector<std::string> row(std::initializer_list<std::string> cells) { return cells; }

std::string fmt(double v) { return io::formatDouble(v); }

std::string boolStr(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------

int cmdEval(const Args& a, const Common& c, std::ostream& os) {
  const auto x = parseFunction(a);
  if (a.t.empty()) throw UsageError("--t is required");
  const Rational t = parseUnitRational(a.t, "--t");
  if (!(a.eps > 0.0)) throw UsageError("--eps must be positive");
  const EvalResult r = eval(x, t, a.eps);
  if (c.format == "json") {
    os << json{{"H", x.hurst.value()}, {"coeffs", x.coeffs.describe()}, {"t", a.t},
               {"eps", a.eps},         {"value", r.value},              {"level", r.level}}
              .dump(2)
       << '\n';
  } else {
    io::writeCsv(os, {"t", "value", "level"}, {row({a.t, fmt(r.value), std::to_string(r.level)})});
  }
  return 0;
}

int cmdGrid(const Args& a, const Common& c, std::ostream& os) {
  const auto x = parseFunction(a);
  if (a.level < 0) throw UsageError("--level is required");
  if (a.what != "values" && a.what != "increments") throw UsageError("--what must be values or increments");
  if (a.max_level > kDefaultMaxLevel) throw UsageError("--max-level cannot exceed 30");
  if (a.max_level > kMaxInMemoryLevel && !a.streaming)
    throw UsageError("--max-level above 24 requires --streaming");
  if (a.level > a.max_level)
    throw std::length_error("level " + std::to_string(a.level) + " exceeds --max-level " +
                            std::to_string(a.max_level));
  const int n = a.level;
  const bool values = a.what == "values";

  if (!a.streaming) {
    Eigen::VectorXd v = values ? gridValues(x, n, a.max_level) : increments(x, n, a.max_level).d;
    if (c.format == "raw") {
      io::writeRawHeader(os, n);
      io::writeRawValues(os, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
    } else if (c.format == "json") {
      os << json{{"H", x.hurst.value()},
                 {"coeffs", x.coeffs.describe()},
                 {"level", n},
                 {"kind", a.what},
                 {values ? "values" : "increments", std::vector<double>(v.data(), v.data() + v.size())}}
                .dump()
         << '\n';
    } else if (values) {
      io::writeGridCsv(os, n, v);
    } else {
      io::writeIncrementsCsvHeader(os);
      io::writeIncrementsCsvRows(os, n, 0, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
    }
    return 0;
  }

  // Streaming: chunks arrive in index order; values are running sums of the
  // increments starting from x(0) = 0.
  bool first_item = true;
  double running = 0.0;
  std::vector<double> buffer;
  auto emit = [&](std::uint64_t first, std::span<const double> items) {
    if (c.format == "raw") {
      io::writeRawValues(os, items);
    } else if (c.format == "json") {
      for (double v : items) {
        os << (first_item ? "" : ",") << json(v).dump();
        first_item = false;
      }
    } else if (values) {
      for (std::size_t i = 0; i < items.size(); ++i)
        os << first + i << ',' << fmt(std::ldexp(static_cast<double>(first + i), -n)) << ',' << fmt(items[i])
           << '\n';
    } else {
      io::writeIncrementsCsvRows(os, n, first, items);
    }
  };

  if (c.format == "raw") {
    io::writeRawHeader(os, n);
  } else if (c.format == "json") {
    os << "{\"H\":" << json(x.hurst.value()).dump() << ",\"coeffs\":" << json(x.coeffs.describe()).dump()
       << ",\"kind\":\"" << a.what << "\",\"level\":" << n << ",\"" << a.what << "\":[";
  } else if (values) {
    os << "k,t,value\n";
  } else {
    io::writeIncrementsCsvHeader(os);
  }

  forEachIncrementChunk(
      x, n,
      [&](std::uint64_t first, std::span<const double> d) {
        if (!values) return emit(first, d);
        buffer.resize(d.size() + (first == 0 ? 1 : 0));
        std::size_t j = 0;
        if (first == 0) buffer[j++] = 0.0;
        for (double inc : d) buffer[j++] = running += inc;
        // The final value is x(1) = 0 exactly.
        if (first + d.size() == (std::uint64_t{1} << n)) buffer.back() = 0.0;
        emit(first == 0 ? 0 : first + 1, buffer);
      },
      kDefaultChunkBits, a.max_level);

  if (c.format == "json") os << "]}\n";
  return 0;
}

int cmdVariation(const Args& a, const Common& c, std::ostream& os) {
  const auto x = parseFunction(a);
  const ExactReal p = a.p.empty() ? (x.hurst.exact() ? ExactReal(Rational(1) / *x.hurst.exact())
                                                     : ExactReal(x.hurst.pStar()))
                                  : usage("--p", [&] { return ExactReal::parse(a.p); });
  if (p.value < 0) throw UsageError("--p must be non-negative");
  const Rational t = a.t.empty() ? Rational(1) : parseUnitRational(a.t, "--t");
  if (t == 0) throw UsageError("--t must be positive");
  if (a.max_level > kDefaultMaxLevel) throw UsageError("--max-level cannot exceed 30");
  if (a.max_level > kMaxInMemoryLevel && !a.streaming)
    throw UsageError("--max-level above 24 requires --streaming");
  const int n_max = a.n_max < 0 ? 20 : a.n_max;
  if (n_max < 1) throw UsageError("--n-max must be >= 1");
  const auto rep = convergenceReport(x, p, toDouble(t), n_max, a.max_level, monteCarlo(a));
  if (c.format == "json")
    os << io::toJson(rep).dump(2) << '\n';
  else
    io::writeVariationCsv(os, rep);
  return 0;
}

int cmdSlope(const Args& a, const Common& c, std::ostream& os) {
  std::vector<Rational> grid;
  if (a.H.empty())
    grid = defaultSlopeGrid();
  else
    grid.push_back(*parseHurst(a).exact());
  const bool truncated = a.level >= 0;
  if (truncated && a.H.empty()) throw UsageError("--level needs --H");

  json out = json::array();
  std::vector<std::vector<std::string>> rows;
  if (truncated) {
    const Hurst h = parseHurst(a);
    const double v = truncatedSlope(h, a.level);
    out.push_back({{"H", h.value()}, {"level", a.level}, {"value", v}, {"exact", true},
                   {"method", "truncated-recursion"}});
    rows.push_back(row({fmt(h.value()), fmt(v), "0", "true", "truncated-recursion"}));
  } else {
    for (const auto& pt : slopeCurve(grid, monteCarlo(a))) {
      json j = io::toJson(pt.slope);
      j["H"] = pt.H;
      out.push_back(j);
      rows.push_back(row({fmt(pt.H), fmt(pt.slope.value), fmt(pt.slope.standard_error),
                          boolStr(pt.slope.exact), pt.slope.method}));
    }
  }
  if (c.format == "json")
    os << out.dump(2) << '\n';
  else
    io::writeCsv(os, {"H", "slope", "standard_error", "exact", "method"}, rows);
  return 0;
}

int cmdMoments(const Args& a, const Common& c, std::ostream& os) {
  if (a.H.empty() == a.lambda.empty()) throw UsageError("give exactly one of --H and --lambda");
  std::optional<Hurst> h;
  std::optional<BernoulliConvolution> bc;
  if (!a.H.empty()) {
    h = parseHurst(a);
    bc = BernoulliConvolution::fromHurst(*h);
  } else {
    bc = usage("--lambda", [&] { return BernoulliConvolution::fromLambda(parseRational(a.lambda)); });
  }
  if (a.p.empty()) throw UsageError("--p is required");
  const ExactReal p = usage("--p", [&] { return ExactReal::parse(a.p); });
  if (p.value < 0) throw UsageError("--p must be non-negative");
  const bool even = p.exact && denominator(*p.exact) == 1 && numerator(*p.exact) % 2 == 0 && *p.exact >= 2;
  const std::string method = a.method.empty() ? (even ? "recursion" : "mc") : a.method;

  json j;
  std::vector<std::string> cells;
  const std::vector<std::string> header{"lambda", "p", "value", "standard_error", "exact", "method"};
  if (method == "recursion" || method == "escribano") {
    if (!even) throw UsageError("--method " + method + " needs an even integer --p >= 2");
    const int ip = static_cast<int>(numerator(*p.exact));
    MomentValue m;
    if (method == "recursion") {
      m = evenMoment(*bc, ip);
    } else {
      if (!h) throw UsageError("--method escribano needs --H");
      m = {escribanoMomentOfZ(*h, ip), std::nullopt, "escribano-float50"};
    }
    j = io::momentJson(bc->lambda(), ip, m);
    cells = {fmt(bc->lambda()), std::to_string(ip), fmt(m.value), "0", boolStr(m.exact.has_value()), m.method};
  } else if (method == "mc") {
    if (a.samples < 1) throw UsageError("--samples must be >= 1");
    const auto e = sampleAbsMoment(*bc, p.value, a.samples, a.seed, a.truncation);
    j = io::toJson(e);
    j["lambda"] = bc->lambda();
    j["p"] = p.value;
    cells = {fmt(bc->lambda()), fmt(p.value), fmt(e.mean), fmt(e.standard_error), "false", "monte carlo"};
  } else {
    throw UsageError("--method must be recursion, escribano or mc");
  }
  if (c.format == "json")
    os << j.dump(2) << '\n';
  else
    io::writeCsv(os, header, {cells});
  return 0;
}

int cmdExtremes(const Args& a, const Common& c, std::ostream& os) {
  const Hurst h = parseHurst(a);
  const int n_max = a.n_max < 0 ? 20 : a.n_max;
  if (n_max < 0 || n_max > 62) throw UsageError("--n-max must be in [0,62]");
  const auto top = maxValue(h);
  std::vector<ExtremeResult> levels;
  for (int n = 1; n <= n_max; ++n) levels.push_back(truncatedMax(h, n));
  if (c.format == "json") {
    json tr = json::array();
    for (const auto& r : levels) tr.push_back(io::toJson(r));
    const auto osc = uniformOscillation(h);
    os << json{{"H", h.value()},
               {"max", io::toJson(top)},
               {"truncated", tr},
               {"oscillation", {{"value", osc.value}, {"s", osc.s}, {"t", osc.t}}}}
              .dump(2)
       << '\n';
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : levels)
      rows.push_back(row({std::to_string(*r.level), fmt(r.value), fmt(r.locations[0]), fmt(r.locations[1])}));
    rows.push_back(row({"inf", fmt(top.value), fmt(top.locations[0]), fmt(top.locations[1])}));
    io::writeCsv(os, {"n", "M_n", "t_minus", "t_plus"}, rows);
  }
  return 0;
}

int cmdModulus(const Args& a, const Common& c, std::ostream& os) {
  const auto x = parseFunction(a);
  const int n = a.level < 0 ? 12 : a.level;
  if (!(a.factor > 0.0)) throw UsageError("--factor must be positive");
  const auto rep = modulusCheck(x, n, a.factor);
  if (c.format == "json")
    os << io::toJson(rep, a.rows).dump(2) << '\n';
  else
    io::writeModulusCsv(os, rep);
  return 0;
}

int cmdSharpness(const Args& a, const Common& c, std::ostream& os) {
  const Hurst h = parseHurst(a);
  const int n_max = a.n_max < 0 ? 20 : a.n_max;
  if (n_max < 2 || n_max > 60) throw UsageError("--n-max must be in [2,60]");
  json out = json::array();
  std::vector<std::vector<std::string>> rows;
  for (int n = 2; n <= n_max; ++n) {
    const auto s = sharpnessSequence(h, n);
    out.push_back(io::toJson(s));
    rows.push_back(row({std::to_string(s.n), fmt(s.h), std::to_string(s.nu), fmt(s.lhs), fmt(s.omega),
                        fmt(s.identity_rhs), fmt(s.ratio)}));
  }
  if (c.format == "json")
    os << out.dump(2) << '\n';
  else
    io::writeCsv(os, {"n", "h", "nu", "lhs", "omega", "identity_rhs", "ratio"}, rows);
  return 0;
}

int cmdEnumcheck(const Args& a, const Common& c, std::ostream& os) {
  const auto x = parseFunction(a);
  const double p = a.p.empty() ? x.hurst.pStar() : usage("--p", [&] { return ExactReal::parse(a.p); }).value;
  if (p < 0) throw UsageError("--p must be non-negative");
  const int n_max = a.n_max < 0 ? 12 : a.n_max;
  if (n_max < 1 || n_max > 20) throw UsageError("--n-max must be in [1,20]");
  constexpr double kTolerance = 1e-12;
  bool ok = true;
  json out = json::array();
  std::vector<std::vector<std::string>> rows;
  for (int n = 1; n <= n_max; ++n) {
    const auto e = enumerationCheck(x, p, n);
    const bool pass = e.columns_complete && e.relative_difference <= kTolerance;
    ok = ok && pass;
    out.push_back({{"n", n},
                   {"p", p},
                   {"columns_complete", e.columns_complete},
                   {"V_n", e.vn},
                   {"V_n_enumerated", e.vn_enumerated},
                   {"relative_difference", e.relative_difference},
                   {"pass", pass}});
    rows.push_back(row({std::to_string(n), boolStr(e.columns_complete), fmt(e.vn), fmt(e.vn_enumerated),
                        fmt(e.relative_difference), boolStr(pass)}));
  }
  if (c.format == "json")
    os << out.dump(2) << '\n';
  else
    io::writeCsv(os, {"n", "columns_complete", "V_n", "V_n_enumerated", "relative_difference", "pass"}, rows);
  if (!ok) std::cerr << "takagi_lab: enumeration check failed\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed Takagi-Landsberg functions: evaluation, variation, moments and extremes"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  Args args;
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json", "raw"}));
  app.add_option("-o,--output", common.output, "Write to this file instead of stdout");
  app.add_option("--threads", common.threads, "Worker cap (default: TAKAGI_LAB_THREADS, else all cores)")
      ->check(CLI::PositiveNumber);

  auto hurst = [&](CLI::App* s, bool required) {
    auto* o = s->add_option("--H", args.H, "Hurst parameter in (0,1), e.g. 1/3 or 0.25");
    if (required) o->required();
  };
  auto coeffs = [&](CLI::App* s) {
    s->add_option("--coeffs", args.coeffs, "plus | tilde | seeded:N | explicit:FILE")->capture_default_str();
  };
  auto mc = [&](CLI::App* s) {
    s->add_option("--samples", args.samples, "Monte Carlo samples")->capture_default_str();
    s->add_option("--seed", args.seed, "Monte Carlo seed")->capture_default_str();
    s->add_option("--truncation", args.truncation, "Series truncation (0: automatic)")
        ->check(CLI::NonNegativeNumber);
  };
  auto guards = [&](CLI::App* s) {
    s->add_option("--max-level", args.max_level, "Largest admissible level")->capture_default_str();
    s->add_flag("--streaming", args.streaming, "Stream chunks; allows --max-level up to 30");
  };

  std::vector<std::pair<CLI::App*, int (*)(const Args&, const Common&, std::ostream&)>> commands;

  auto* e = app.add_subcommand("eval", "Evaluate x(t) to a given accuracy");
  hurst(e, true);
  coeffs(e);
  e->add_option("--t", args.t, "Point in [0,1], exact rational or decimal")->required();
  e->add_option("--eps", args.eps, "Absolute accuracy")->capture_default_str();
  commands.emplace_back(e, cmdEval);

  auto* g = app.add_subcommand("grid", "Values or increments on the level-n dyadic grid");
  hurst(g, true);
  coeffs(g);
  g->add_option("-n,--level", args.level, "Grid level")->required()->check(CLI::NonNegativeNumber);
  g->add_option("--what", args.what, "values | increments")->capture_default_str();
  guards(g);
  commands.emplace_back(g, cmdGrid);

  auto* v = app.add_subcommand("variation", "V_n for n = 1..n-max with regime and limit");
  hurst(v, true);
  coeffs(v);
  v->add_option("--p", args.p, "Exponent (default 1/H)");
  v->add_option("--t", args.t, "Upper end in (0,1] (default 1)");
  v->add_option("--n-max", args.n_max, "Largest level (default 20)");
  guards(v);
  mc(v);
  commands.emplace_back(v, cmdVariation);

  auto* s = app.add_subcommand("slope", "Variation slope 2^{1-1/H} E|Z_H|^{1/H}; default 50-point H grid");
  hurst(s, false);
  s->add_option("-n,--level", args.level, "Truncated slope at this level (1/H even)");
  mc(s);
  commands.emplace_back(s, cmdSlope);

  auto* m = app.add_subcommand("moments", "Moments of the Bernoulli convolution");
  hurst(m, false);
  m->add_option("--lambda", args.lambda, "Contraction in (0,1) instead of --H");
  m->add_option("--p", args.p, "Moment order")->required();
  m->add_option("--method", args.method, "recursion | escribano | mc");
  mc(m);
  commands.emplace_back(m, cmdMoments);

  auto* x = app.add_subcommand("extremes", "Maximum, truncated maxima and maximizers");
  hurst(x, true);
  x->add_option("--n-max", args.n_max, "Largest truncation level (default 20)");
  commands.emplace_back(x, cmdExtremes);

  auto* md = app.add_subcommand("modulus", "Dyadic increments against omega_H");
  hurst(md, true);
  coeffs(md);
  md->add_option("-n,--level", args.level, "Grid level (default 12, at most 22)");
  md->add_option("--factor", args.factor, "Bound factor multiplying omega_H")->capture_default_str();
  md->add_flag("--rows", args.rows, "Include per-lag rows in JSON output");
  commands.emplace_back(md, cmdModulus);

  auto* sh = app.add_subcommand("sharpness", "x^H along h_n = (2/3) 2^{-n} against omega_H");
  hurst(sh, true);
  sh->add_option("--n-max", args.n_max, "Largest n (default 20)");
  commands.emplace_back(sh, cmdSharpness);

  auto* ec = app.add_subcommand("enumcheck", "Sign-matrix columns and V_n against full enumeration");
  hurst(ec, true);
  coeffs(ec);
  ec->add_option("--p", args.p, "Exponent (default 1/H)");
  ec->add_option("--n-max", args.n_max, "Largest level (default 12, at most 20)");
  commands.emplace_back(ec, cmdEnumcheck);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (common.threads > 0) setNbThreads(common.threads);
    if (common.format == "raw" && !g->parsed()) throw UsageError("--format raw is only available for grid");

    std::ofstream file;
    if (!common.output.empty()) {
      file.open(common.output, std::ios::binary | std::ios::trunc);
      if (!file) throw UsageError("cannot open " + common.output);
    }
    std::ostream& os = common.output.empty() ? std::cout : static_cast<std::ostream&>(file);

    for (auto& [cmd, run] : commands) {
      if (!cmd->parsed()) continue;
      const int code = run(args, common, os);
      os.flush();
      if (!os) throw std::runtime_error("write failed");
      return code;
    }
    return 2;
  } catch (const UsageError& err) {
    std::cerr << "takagi_lab: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "takagi_lab: " << err.what() << '\n';
    return 1;
  }
}
