// fixset: exact-arithmetic and Monte Carlo statistics of random permutations —
// fixed-set probabilities, block-system probabilities, realizable class-total
// sets, decay exponents, series bounds, and induced-action counts.
//
// stdout carries data (CSV with a mandatory header row, or JSON); stderr
// carries machine-readable error objects. Exit codes: 0 success, 2 usage,
// 3 resource cap exceeded, 4 domain error.

#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fixset/blocksys.hpp"
#include "fixset/config.hpp"
#include "fixset/errors.hpp"
#include "fixset/fixedsets.hpp"
#include "fixset/lsets.hpp"
#include "fixset/permcore.hpp"
#include "fixset/primaction.hpp"
#include "fixset/rational.hpp"
#include "fixset/rng.hpp"

namespace fixset {
namespace {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Formatting helpers

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_cell(const Json& value) {
  if (value.is_string()) return csv_escape(value.get<std::string>());
  if (value.is_array()) {
    std::string joined;
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (i) joined += ',';
      joined += value[i].is_string() ? value[i].get<std::string>()
                                     : value[i].dump();
    }
    return csv_escape(joined);
  }
  return value.dump();
}

// One table, two renderings: CSV rows under a mandatory header, or a JSON
// array of objects with the same column keys. Numeric cells stay numbers in
// JSON; floating-point and rational cells are preformatted strings so both
// formats show identical digits.
void emit_table(OutputFormat format, const std::vector<std::string>& columns,
                const std::vector<std::vector<Json>>& rows) {
  if (format == OutputFormat::kCsv) {
    std::string header;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) header += ',';
      header += csv_escape(columns[i]);
    }
    std::cout << header << '\n';
    for (const auto& row : rows) {
      std::string line;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) line += ',';
        line += csv_cell(row[i]);
      }
      std::cout << line << '\n';
    }
    return;
  }
  Json doc = Json::array();
  for (const auto& row : rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
    doc.push_back(std::move(obj));
  }
  std::cout << doc.dump(2) << '\n';
}

Json u32_array(const std::vector<std::uint32_t>& v) {
  Json arr = Json::array();
  for (std::uint32_t x : v) arr.push_back(x);
  return arr;
}

// ---------------------------------------------------------------------------
// Argument parsing helpers (comma lists, ranges, permutations)

std::vector<std::uint32_t> parse_u32_list(const std::string& text,
                                          const std::string& what) {
  std::vector<std::uint32_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(item, &used);
      if (used != item.size() || v > 0xFFFFFFFFul) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw Error(what + ": expected a comma-separated list of nonnegative integers, got '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw Error(what + ": empty list");
  return out;
}

// "4" or "2..5" or "2,3,5".
std::vector<std::uint32_t> parse_range(const std::string& text,
                                       const std::string& what) {
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    auto lo = parse_u32_list(text.substr(0, dots), what);
    auto hi = parse_u32_list(text.substr(dots + 2), what);
    if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0])
      throw Error(what + ": malformed range '" + text + "'");
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = lo[0]; v <= hi[0]; ++v) out.push_back(v);
    return out;
  }
  return parse_u32_list(text, what);
}

Permutation parse_permutation(const std::string& images_text) {
  return Permutation(parse_u32_list(images_text, "--perm"));
}

// A canonical representative of a cycle type: cycles filled with consecutive
// points, shortest lengths first.
Permutation representative(const CycleType& type) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::uint32_t next = 1;
  for (std::uint32_t j = 1; j <= type.n(); ++j) {
    for (std::uint32_t c = 0; c < type.count(j); ++c) {
      std::vector<std::uint32_t> cycle(j);
      for (std::uint32_t t = 0; t < j; ++t) cycle[t] = next++;
      cycles.push_back(std::move(cycle));
    }
  }
  return Permutation::from_cycles(type.n(), cycles);
}

WreathElement parse_wreath(std::uint32_t m, const std::string& base_text,
                           const std::string& top_text) {
  std::vector<Permutation> base;
  std::size_t pos = 0;
  while (pos <= base_text.size()) {
    std::size_t semi = base_text.find(';', pos);
    std::string part = base_text.substr(
        pos, semi == std::string::npos ? std::string::npos : semi - pos);
    base.emplace_back(parse_u32_list(part, "--base"));
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  Permutation top(parse_u32_list(top_text, "--top"));
  return WreathElement(m, std::move(base), std::move(top));
}

// ---------------------------------------------------------------------------
// Shared flags: defaults, then config file, then FIXSET_SEED, then flags.

struct Common {
  CLI::App* cmd = nullptr;
  std::string config_path;
  std::string format;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  unsigned threads = 0;
  std::uint32_t cap = 0;
  std::uint64_t tuple_budget = 0;

  void attach(CLI::App* sub) {
    cmd = sub;
    sub->add_option("--config", config_path,
                    "Config file of key = value lines (enumeration_cap, "
                    "tuple_budget, seed, trials, output_format)");
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", seed, "Root seed for all random streams");
    sub->add_option("--trials", trials, "Monte Carlo trial count");
    sub->add_option("--threads", threads,
                    "Worker thread bound (0 = available parallelism); results "
                    "are identical for every value");
    sub->add_option("--cap", cap, "Cycle-type enumeration cap on n");
    sub->add_option("--tuple-budget", tuple_budget,
                    "Ceiling on stored tuples in set constructions");
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (cmd->count("--config") > 0) apply_config_file(cfg, config_path);
    apply_env(cfg);
    if (cmd->count("--seed") > 0) cfg.seed = seed;
    if (cmd->count("--trials") > 0) cfg.trials = trials;
    if (cmd->count("--cap") > 0) cfg.enumeration_cap = cap;
    if (cmd->count("--tuple-budget") > 0) cfg.tuple_budget = tuple_budget;
    if (cmd->count("--format") > 0) cfg.output_format = *parse_output_format(format);
    validate(cfg);
    return cfg;
  }
};

// ---------------------------------------------------------------------------
// Subcommand option blocks

struct ExactIOpts {
  Common common;
  std::uint32_t n = 0;
  std::string k_text;
  std::string d_text;
};

struct BlockOpts {
  Common common;
  std::uint32_t n = 0;
  std::uint32_t nu = 0;
};

struct LsetOpts {
  Common common;
  std::string c_text;
  std::string a_text;
  std::uint32_t m = 2;
};

struct GboundOpts {
  Common common;
  std::string a_text;
  std::uint32_t m = 2;
};

struct FdivOpts {
  Common common;
  std::uint64_t n = 0;
  std::uint32_t d = 2;
};

struct DeltaOpts {
  Common common;
  std::string m_text;
};

struct DominantOpts {
  Common common;
  std::uint32_t nu = 0;
};

struct SieveOpts {
  Common common;
  std::uint32_t n = 0;
  std::string c_text;
  std::uint32_t k = 0;
};

struct KsetOpts {
  Common common;
  std::string perm_text;
  std::string type_text;
  std::uint32_t k = 1;
  std::uint64_t point_cap = kDefaultPointCap;
};

struct WreathOpts {
  Common common;
  std::uint32_t m = 0;
  std::string base_text;
  std::string top_text;
  std::uint32_t k = 0;
  std::string mode = "auto";
  std::uint64_t point_cap = kDefaultPointCap;
};

struct MinDegOpts {
  Common common;
  std::string perm_text;
  std::string type_text;
  std::string product_text;
  std::uint32_t n = 0;
  double alpha = 0.0;
};

struct LocalGlobalOpts {
  Common common;
  std::string n_list_text;
};

struct OracleOpts {
  Common common;
};

// ---------------------------------------------------------------------------
// Handlers

int run_exact_i(const ExactIOpts& o, bool monte_carlo) {
  RunConfig cfg = o.common.resolve();
  auto k = parse_u32_list(o.k_text, "--k");
  std::vector<std::uint32_t> d(k.size(), 1);
  if (!o.d_text.empty()) d = parse_u32_list(o.d_text, "--d");
  KDVectors kd(k, d);
  if (o.n != 0 && o.n != kd.n)
    throw MismatchError("--n disagrees with the sum of --k parts");

  if (!monte_carlo) {
    ExactOptions opt;
    opt.enumeration_cap = cfg.enumeration_cap;
    opt.threads = o.common.threads;
    ExactProbability p = exact_i(kd, opt);
    emit_table(cfg.output_format, {"n", "k", "d", "p"},
               {{Json(kd.n), u32_array(kd.k), u32_array(kd.d),
                 Json(p.to_fraction())}});
    return 0;
  }
  Rng rng(cfg.seed);
  Estimate e = mc_i(kd, static_cast<std::int64_t>(cfg.trials), rng,
                    o.common.threads, cfg.enumeration_cap);
  emit_table(cfg.output_format,
             {"n", "k", "d", "estimate", "stderr", "trials"},
             {{Json(kd.n), u32_array(kd.k), u32_array(kd.d),
               Json(fmt_double(e.value)), Json(fmt_double(e.stderr_value)),
               Json(e.trials)}});
  return 0;
}

int run_exact_I(const BlockOpts& o, bool monte_carlo) {
  RunConfig cfg = o.common.resolve();
  BlockSystemQuery q(o.n, o.nu);
  if (!monte_carlo) {
    ExactOptions opt;
    opt.enumeration_cap = cfg.enumeration_cap;
    opt.threads = o.common.threads;
    ExactProbability p = exact_I(q, opt);
    emit_table(cfg.output_format, {"n", "nu", "p"},
               {{Json(q.n), Json(q.nu), Json(p.to_fraction())}});
    return 0;
  }
  Rng rng(cfg.seed);
  Estimate e = mc_I(q, static_cast<std::int64_t>(cfg.trials), rng,
                    o.common.threads, cfg.enumeration_cap);
  emit_table(cfg.output_format, {"n", "nu", "estimate", "stderr", "trials"},
             {{Json(q.n), Json(q.nu), Json(fmt_double(e.value)),
               Json(fmt_double(e.stderr_value)), Json(e.trials)}});
  return 0;
}

int run_lset(const LsetOpts& o) {
  RunConfig cfg = o.common.resolve();
  const bool have_c = !o.c_text.empty();
  const bool have_a = !o.a_text.empty();
  if (have_c == have_a)
    throw Error("lset: give exactly one of --c (multiplicities) or --a (length list)");
  TupleSet set;
  if (have_c) {
    PartialCycleType c(parse_u32_list(o.c_text, "--c"));
    set = lset(c, o.m, cfg.tuple_budget);
  } else {
    LengthMultiset a{parse_u32_list(o.a_text, "--a")};
    set = lset_star(a, o.m, kDefaultStarCap, cfg.tuple_budget);
  }

  if (cfg.output_format == OutputFormat::kJson) {
    Json tuples = Json::array();
    for (const auto& t : set.tuples) {
      Json row = Json::array();
      for (std::uint64_t v : t) row.push_back(v);
      tuples.push_back(std::move(row));
    }
    Json doc{{"m", set.m},
             {"total", set.total},
             {"size", set.size()},
             {"tuples", std::move(tuples)}};
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  std::vector<std::string> cols{"m", "total"};
  for (std::uint32_t i = 1; i < set.m; ++i) cols.push_back("t" + std::to_string(i));
  std::vector<std::vector<Json>> rows;
  for (const auto& t : set.tuples) {
    std::vector<Json> row{Json(set.m), Json(set.total)};
    for (std::uint64_t v : t) row.emplace_back(v);
    rows.push_back(std::move(row));
  }
  emit_table(cfg.output_format, cols, rows);
  return 0;
}

int run_gbound(const GboundOpts& o) {
  RunConfig cfg = o.common.resolve();
  LengthMultiset a{parse_u32_list(o.a_text, "--a")};
  mpz_class g = g_bound(a, o.m);
  emit_table(cfg.output_format, {"a", "m", "g"},
             {{u32_array(a.a), Json(o.m), Json(g.get_str())}});
  return 0;
}

int run_fdiv(const FdivOpts& o) {
  RunConfig cfg = o.common.resolve();
  mpz_class count = f_divisible(o.n, o.d);
  ExactProbability p(count, factorial(o.n));
  const double bound =
      std::pow(static_cast<double>(o.n), -1.0 + 1.0 / static_cast<double>(o.d));
  emit_table(cfg.output_format, {"n", "d", "count", "p", "upper_bound"},
             {{Json(o.n), Json(o.d), Json(count.get_str()),
               Json(p.to_fraction()), Json(fmt_double(bound))}});
  return 0;
}

int run_delta(const DeltaOpts& o) {
  RunConfig cfg = o.common.resolve();
  auto ms = parse_range(o.m_text, "--m");
  std::vector<std::vector<Json>> rows;
  for (std::uint32_t m : ms)
    rows.push_back({Json(m), Json(fmt_double(delta(m))),
                    Json(fmt_double(delta_integral(m)))});
  emit_table(cfg.output_format, {"m", "delta", "integral"}, rows);
  return 0;
}

int run_dominant(const DominantOpts& o) {
  RunConfig cfg = o.common.resolve();
  ExponentReport rep = dominant_partition(o.nu);
  std::vector<std::vector<Json>> rows;
  for (const auto& cand : rep.candidates) {
    const bool is_dom = cand.partition == rep.dominant;
    rows.push_back({Json(rep.nu), Json(cand.partition.to_string()),
                    Json(fmt_double(cand.exponent)), Json(is_dom ? 1 : 0),
                    Json(rep.ambiguous ? 1 : 0)});
  }
  emit_table(cfg.output_format,
             {"nu", "partition", "exponent", "dominant", "ambiguous"}, rows);
  return 0;
}

int run_gf_bound(const BlockOpts& o) {
  RunConfig cfg = o.common.resolve();
  BlockSystemQuery q(o.n, o.nu);
  SeriesBound b = largenu_bound(q);
  emit_table(cfg.output_format, {"n", "nu", "s", "f_coeff", "g_coeff"},
             {{Json(q.n), Json(q.nu), Json(q.block_size()),
               Json(fmt_double(b.f_coeff)), Json(fmt_double(b.g_coeff))}});
  return 0;
}

int run_sieve_count(const SieveOpts& o) {
  RunConfig cfg = o.common.resolve();
  PartialCycleType c(parse_u32_list(o.c_text, "--c"));
  const std::uint32_t k = o.k == 0 ? c.support() : o.k;
  mpz_class count = count_prescribed_small_cycles(o.n, c, k);
  ExactProbability p(count, factorial(o.n));
  emit_table(cfg.output_format, {"n", "k", "c", "count", "p"},
             {{Json(o.n), Json(k), u32_array(c.counts()),
               Json(count.get_str()), Json(p.to_fraction())}});
  return 0;
}

Permutation permutation_input(const std::string& perm_text,
                              const std::string& type_text,
                              const std::string& cmd_name) {
  const bool have_perm = !perm_text.empty();
  const bool have_type = !type_text.empty();
  if (have_perm == have_type)
    throw Error(cmd_name +
                ": give exactly one of --perm (one-line images) or --type "
                "(cycle-length multiplicities)");
  if (have_perm) return parse_permutation(perm_text);
  return representative(CycleType(parse_u32_list(type_text, "--type")));
}

int run_kset_cycles(const KsetOpts& o) {
  RunConfig cfg = o.common.resolve();
  Permutation p = permutation_input(o.perm_text, o.type_text, "kset-cycles");
  std::uint64_t cycles = kset_cycle_count(p, o.k, o.point_cap);
  mpz_class points = binomial(p.degree(), o.k);
  emit_table(cfg.output_format, {"m", "k", "images", "points", "cycles"},
             {{Json(p.degree()), Json(o.k), u32_array(p.images()),
               Json(points.get_str()), Json(cycles)}});
  return 0;
}

int run_wreath(const WreathOpts& o) {
  RunConfig cfg = o.common.resolve();
  WreathElement g = parse_wreath(o.m, o.base_text, o.top_text);
  std::uint64_t cycles = wreath_cycle_count(g, o.point_cap);
  Json fixed = Json("");
  if (o.common.cmd->count("--k") > 0) {
    FixedPointMode mode = FixedPointMode::kAuto;
    if (o.mode == "formula") mode = FixedPointMode::kFormula;
    if (o.mode == "exhaustive") mode = FixedPointMode::kExhaustive;
    fixed = Json(wreath_fixed_points(g, o.k, mode, o.point_cap).get_str());
  }
  emit_table(
      cfg.output_format,
      {"m", "r", "top", "k", "fixed_points", "point_cycles"},
      {{Json(g.m()), Json(g.r()), u32_array(g.top().images()),
        o.common.cmd->count("--k") > 0 ? Json(o.k) : Json(""), fixed,
        Json(cycles)}});
  return 0;
}

int run_min_degree(const MinDegOpts& o) {
  RunConfig cfg = o.common.resolve();
  const bool have_product = !o.product_text.empty();
  const bool have_mc = o.common.cmd->count("--alpha") > 0;
  const bool have_elem = !o.perm_text.empty() || !o.type_text.empty();
  if (have_product + have_mc + have_elem != 1)
    throw Error(
        "min-degree: choose exactly one mode: --perm/--type (cyclic group of "
        "one permutation), --product m,k,r (product action), or --n with "
        "--alpha (Monte Carlo tail probability)");

  if (have_product) {
    auto mkr = parse_u32_list(o.product_text, "--product");
    if (mkr.size() != 3) throw Error("--product expects m,k,r");
    mpz_class deg = minimal_degree_product_action(mkr[0], mkr[1], mkr[2]);
    emit_table(cfg.output_format, {"m", "k", "r", "min_degree"},
               {{Json(mkr[0]), Json(mkr[1]), Json(mkr[2]),
                 Json(deg.get_str())}});
    return 0;
  }
  if (have_mc) {
    if (o.n == 0) throw Error("min-degree --alpha also needs --n");
    Rng rng(cfg.seed);
    Estimate e = mc_minimal_degree(o.n, o.alpha, cfg.trials, rng,
                                   static_cast<int>(o.common.threads));
    const double threshold = std::pow(static_cast<double>(o.n), o.alpha);
    emit_table(
        cfg.output_format,
        {"n", "alpha", "threshold", "estimate", "stderr", "trials"},
        {{Json(o.n), Json(fmt_double(o.alpha)), Json(fmt_double(threshold)),
          Json(fmt_double(e.value)), Json(fmt_double(e.stderr_value)),
          Json(e.trials)}});
    return 0;
  }
  Permutation p = permutation_input(o.perm_text, o.type_text, "min-degree");
  std::uint64_t deg = minimal_degree_cyclic(p);
  emit_table(cfg.output_format, {"n", "images", "min_degree"},
             {{Json(p.degree()), u32_array(p.images()), Json(deg)}});
  return 0;
}

int run_local_global(const LocalGlobalOpts& o) {
  RunConfig cfg = o.common.resolve();
  auto n_list = parse_u32_list(o.n_list_text, "--n-list");
  FeasibilityCache cache;
  ExactOptions opt;
  opt.enumeration_cap = cfg.enumeration_cap;
  opt.threads = o.common.threads;
  opt.cache = &cache;
  Rng rng(cfg.seed);
  auto rows = local_global_report(n_list, static_cast<std::int64_t>(cfg.trials),
                                  rng, opt);
  std::vector<std::vector<Json>> cells;
  for (const auto& row : rows)
    cells.push_back({Json(row.n), Json(row.exact.to_fraction()),
                     Json(fmt_double(row.lset_over_k)),
                     Json(fmt_double(row.lset_stderr_over_k)),
                     Json(fmt_double(row.ratio))});
  emit_table(cfg.output_format,
             {"n", "exact", "lset_over_k", "stderr", "ratio"}, cells);
  return 0;
}

// The instrument run that pins the constants used by the acceptance layer:
// observed envelopes for the order-of-magnitude statements whose absolute
// constants are left open.
int run_oracle_suite(const OracleOpts& o) {
  RunConfig cfg = o.common.resolve();
  std::vector<std::vector<Json>> rows;
  auto add = [&rows](const std::string& check, const std::string& stat,
                     const std::string& value) {
    rows.push_back({Json(check), Json(stat), Json(value)});
  };

  {  // Divisible-cycle probability vs n^(-1+1/d): observed minimum ratio.
    double min_ratio = 1e300;
    std::string argmin;
    for (std::uint64_t n = 2; n <= 200; ++n) {
      mpq_class frac;
      for (std::uint32_t d = 2; d <= n; ++d) {
        if (n % d != 0) continue;
        frac = mpq_class(f_divisible(n, d), factorial(n));
        frac.canonicalize();
        const double bound = std::pow(static_cast<double>(n),
                                      -1.0 + 1.0 / static_cast<double>(d));
        const double ratio = frac.get_d() / bound;
        if (ratio < min_ratio) {
          min_ratio = ratio;
          argmin = "n=" + std::to_string(n) + ",d=" + std::to_string(d);
        }
      }
    }
    add("fdiv_lower", "min_ratio", fmt_double(min_ratio));
    add("fdiv_lower", "argmin", argmin);
  }

  {  // Prescribed-small-cycle count vs n!/(k prod c_i! i^c_i): envelope.
    double lo = 1e300, hi = 0.0;
    std::string arglo, arghi;
    const std::vector<std::vector<std::uint32_t>> shapes{
        {0}, {1}, {2}, {0, 1}, {1, 1}, {2, 1}, {0, 0, 1}, {1, 0, 1}, {0, 2, 1}};
    for (std::uint32_t n = 8; n <= 40; n += 4) {
      for (std::uint32_t k : {1u, 2u, 3u, 4u, 6u}) {
        if (k > n) continue;
        for (const auto& shape : shapes) {
          PartialCycleType c(shape);
          if (c.support() > k) continue;
          const std::uint64_t S = c.weighted_sum();
          if (S + k + 1 > n) continue;  // keep k <= n - S - 1
          mpz_class weight = 1;
          for (std::uint32_t j = 1; j <= c.support(); ++j) {
            mpz_class jc;
            mpz_ui_pow_ui(jc.get_mpz_t(), j, c.count(j));
            weight *= factorial(c.count(j)) * jc;
          }
          mpq_class ratio(count_prescribed_small_cycles(n, c, k) * k * weight,
                          factorial(n));
          ratio.canonicalize();
          const double r = ratio.get_d();
          std::string tag = "n=" + std::to_string(n) + ",k=" + std::to_string(k);
          if (r < lo) { lo = r; arglo = tag; }
          if (r > hi) { hi = r; arghi = tag; }
        }
      }
    }
    add("sieve_order", "min_ratio", fmt_double(lo));
    add("sieve_order", "min_at", arglo);
    add("sieve_order", "max_ratio", fmt_double(hi));
    add("sieve_order", "max_at", arghi);
  }

  {  // Induced k-set action: minimum of cycles/sqrt(m) over all types.
    double min_ratio = 1e300;
    std::string argmin;
    bool ceil_ok = true;
    for (std::uint32_t m = 5; m <= 30; ++m) {
      const double sqrt_m = std::sqrt(static_cast<double>(m));
      const auto ceil_sqrt =
          static_cast<std::uint64_t>(std::ceil(sqrt_m - 1e-12));
      for (const IntegerPartition& part : partitions_of(m)) {
        CycleType type = CycleType::from_partition(part);
        if (type.count(1) == static_cast<std::uint32_t>(m)) continue;  // skip identity
        Permutation p = representative(type);
        for (std::uint32_t k : {2u, 3u}) {
          const std::uint64_t cycles = kset_cycle_count(p, k);
          if (cycles < ceil_sqrt) ceil_ok = false;
          const double ratio = static_cast<double>(cycles) / sqrt_m;
          if (ratio < min_ratio) {
            min_ratio = ratio;
            argmin = "m=" + std::to_string(m) + ",k=" + std::to_string(k) +
                     ",type=" + part.to_string();
          }
        }
      }
    }
    add("kset_cycles", "min_ratio_vs_sqrt_m", fmt_double(min_ratio));
    add("kset_cycles", "argmin", argmin);
    add("kset_cycles", "ceil_sqrt_bound_holds", ceil_ok ? "1" : "0");
  }

  {  // Half/half fixed-set probability vs Poisson-model set size: envelope.
    std::vector<std::uint32_t> n_list;
    for (std::uint32_t n = 8; n <= 40; n += 2) n_list.push_back(n);
    FeasibilityCache cache;
    ExactOptions opt;
    opt.enumeration_cap = cfg.enumeration_cap;
    opt.threads = o.common.threads;
    opt.cache = &cache;
    Rng rng(cfg.seed);
    auto table = local_global_report(
        n_list, static_cast<std::int64_t>(cfg.trials), rng, opt);
    double lo = 1e300, hi = 0.0;
    std::string arglo, arghi;
    for (const auto& row : table) {
      if (row.ratio < lo) { lo = row.ratio; arglo = "n=" + std::to_string(row.n); }
      if (row.ratio > hi) { hi = row.ratio; arghi = "n=" + std::to_string(row.n); }
    }
    add("local_global", "min_ratio", fmt_double(lo));
    add("local_global", "min_at", arglo);
    add("local_global", "max_ratio", fmt_double(hi));
    add("local_global", "max_at", arghi);
    add("local_global", "spread", fmt_double(hi / lo));
  }

  emit_table(cfg.output_format, {"check", "stat", "value"}, rows);
  return 0;
}

// ---------------------------------------------------------------------------

int fail(int code, const char* kind, const std::string& message) {
  Json err{{"error", kind}, {"message", message}};
  std::cerr << err.dump() << '\n';
  return code;
}

int dispatch(int argc, char** argv) {
  CLI::App app{
      "Exact and Monte Carlo statistics of random permutations: fixed-set "
      "probabilities, block-system probabilities, realizable class-total "
      "sets, decay exponents, series bounds, and induced-action counts."};
  app.require_subcommand(1);

  ExactIOpts exact_i_opts, mc_i_opts;
  BlockOpts exact_I_opts, mc_I_opts, gf_opts;
  LsetOpts lset_opts;
  GboundOpts gbound_opts;
  FdivOpts fdiv_opts;
  DeltaOpts delta_opts;
  DominantOpts dominant_opts;
  SieveOpts sieve_opts;
  KsetOpts kset_opts;
  WreathOpts wreath_opts;
  MinDegOpts mindeg_opts;
  LocalGlobalOpts lg_opts;
  OracleOpts oracle_opts;

  auto* c_exact_i = app.add_subcommand(
      "exact-i",
      "Exact probability that a uniform permutation of n points has disjoint "
      "invariant sets of sizes k_1..k_m whose restricted cycle lengths are "
      "divisible by d_1..d_m (sum of exact conjugacy-class weights over "
      "feasible cycle types).");
  c_exact_i->add_option("--n", exact_i_opts.n, "Degree (optional cross-check; inferred from --k)");
  c_exact_i->add_option("--k", exact_i_opts.k_text, "Part sizes, e.g. 2,2")->required();
  c_exact_i->add_option("--d", exact_i_opts.d_text, "Divisibility constraints (default all 1)");
  exact_i_opts.common.attach(c_exact_i);

  auto* c_mc_i = app.add_subcommand(
      "mc-i",
      "Monte Carlo estimate of the same invariant-set probability as exact-i, "
      "from uniformly sampled permutations (seeded, reproducible).");
  c_mc_i->add_option("--n", mc_i_opts.n, "Degree (optional cross-check)");
  c_mc_i->add_option("--k", mc_i_opts.k_text, "Part sizes")->required();
  c_mc_i->add_option("--d", mc_i_opts.d_text, "Divisibility constraints (default all 1)");
  mc_i_opts.common.attach(c_mc_i);

  auto* c_exact_I = app.add_subcommand(
      "exact-I",
      "Exact probability that a uniform permutation of n points preserves "
      "some partition into nu equal blocks (existence over block-count "
      "splits, exact rational).");
  c_exact_I->add_option("--n", exact_I_opts.n, "Degree")->required();
  c_exact_I->add_option("--nu", exact_I_opts.nu, "Number of blocks (divides n, 1 < nu < n)")->required();
  exact_I_opts.common.attach(c_exact_I);

  auto* c_mc_I = app.add_subcommand(
      "mc-I", "Monte Carlo estimate of the block-preservation probability of exact-I.");
  c_mc_I->add_option("--n", mc_I_opts.n, "Degree")->required();
  c_mc_I->add_option("--nu", mc_I_opts.nu, "Number of blocks")->required();
  mc_I_opts.common.attach(c_mc_I);

  auto* c_lset = app.add_subcommand(
      "lset",
      "The set of realizable class-total tuples: distribute cycles (given as "
      "multiplicities --c, or as an explicit length list --a) into m classes "
      "and collect the first m-1 class totals. Emits the exact set.");
  c_lset->add_option("--c", lset_opts.c_text, "Cycle multiplicities c_1,c_2,...");
  c_lset->add_option("--a", lset_opts.a_text, "Explicit cycle lengths a_1,a_2,...");
  c_lset->add_option("--m", lset_opts.m, "Number of classes (>= 2)")->required();
  lset_opts.common.attach(c_lset);

  auto* c_gbound = app.add_subcommand(
      "gbound",
      "Closed-form upper bound for the realizable-tuple set size of a length "
      "list: min over j of (1 + a~_1 + ... + a~_j)^(m-1) * m^(r-j) with a~ "
      "sorted increasing.");
  c_gbound->add_option("--a", gbound_opts.a_text, "Cycle lengths")->required();
  c_gbound->add_option("--m", gbound_opts.m, "Number of classes")->required();
  gbound_opts.common.attach(c_gbound);

  auto* c_fdiv = app.add_subcommand(
      "fdiv",
      "Exact count and probability of permutations of n points all of whose "
      "cycle lengths are divisible by d, with the n^(-1+1/d) comparison "
      "value.");
  c_fdiv->add_option("--n", fdiv_opts.n, "Degree")->required();
  c_fdiv->add_option("--d", fdiv_opts.d, "Divisor (>= 2)")->required();
  fdiv_opts.common.attach(c_fdiv);

  auto* c_delta = app.add_subcommand(
      "delta",
      "Decay exponent delta(m) = T log T - T + 1 with T = (m-1)/log m (the "
      "integral of log t from 1 to T), with an adaptive-quadrature "
      "cross-check column.");
  c_delta->add_option("--m", delta_opts.m_text, "m value, list, or range (e.g. 2..5)")->required();
  delta_opts.common.attach(c_delta);

  auto* c_dominant = app.add_subcommand(
      "dominant",
      "Exponent table for block-count split shapes (d,1,...,1): the shape "
      "with the smallest decay exponent dominates the block-preservation "
      "probability.");
  c_dominant->add_option("--nu", dominant_opts.nu, "Block count (2..64)")->required();
  dominant_opts.common.attach(c_dominant);

  auto* c_gf = app.add_subcommand(
      "gf-bound",
      "Series upper bounds for the block-preservation probability at block "
      "size s = n/nu >= 2: the degree-nu coefficients of the exact "
      "exponential series f and its dominating closed-form relaxation g.");
  c_gf->add_option("--n", gf_opts.n, "Degree")->required();
  c_gf->add_option("--nu", gf_opts.nu, "Number of blocks")->required();
  gf_opts.common.attach(c_gf);

  auto* c_sieve = app.add_subcommand(
      "sieve-count",
      "Exact number of permutations of n points with exactly c_i cycles of "
      "length i for every i <= k (no constraint on longer cycles).");
  c_sieve->add_option("--n", sieve_opts.n, "Degree")->required();
  c_sieve->add_option("--c", sieve_opts.c_text, "Prescribed multiplicities c_1,c_2,...")->required();
  c_sieve->add_option("--k", sieve_opts.k, "Constraint horizon (default: length of --c)");
  sieve_opts.common.attach(c_sieve);

  auto* c_kset = app.add_subcommand(
      "kset-cycles",
      "Number of cycles of the action a permutation induces on k-element "
      "subsets of its domain, by explicit orbit traversal.");
  c_kset->add_option("--perm", kset_opts.perm_text, "One-line images, e.g. 2,1,3,4");
  c_kset->add_option("--type", kset_opts.type_text, "Cycle multiplicities of a representative");
  c_kset->add_option("--k", kset_opts.k, "Subset size")->required();
  c_kset->add_option("--point-cap", kset_opts.point_cap, "Max subsets to traverse");
  kset_opts.common.attach(c_kset);

  auto* c_wreath = app.add_subcommand(
      "wreath",
      "Coordinate-permuting product action: r base permutations of {1..m} "
      "plus a top permutation of the coordinates. Emits the orbit count on "
      "m^r tuples and, with --k, the number of fixed k-subset tuples.");
  c_wreath->add_option("--m", wreath_opts.m, "Base degree")->required();
  c_wreath->add_option("--base", wreath_opts.base_text,
                       "Semicolon-separated image lists, e.g. 2,1,3;1,2,3")->required();
  c_wreath->add_option("--top", wreath_opts.top_text, "Top permutation images")->required();
  c_wreath->add_option("--k", wreath_opts.k, "Subset size for fixed-point count");
  c_wreath->add_option("--mode", wreath_opts.mode, "Fixed-point mode")
      ->check(CLI::IsMember({"auto", "formula", "exhaustive"}));
  c_wreath->add_option("--point-cap", wreath_opts.point_cap, "Max points to traverse");
  wreath_opts.common.attach(c_wreath);

  auto* c_mindeg = app.add_subcommand(
      "min-degree",
      "Minimal degree (fewest points moved by a nontrivial element): of the "
      "cyclic group of one permutation (--perm/--type), of the "
      "coordinate-permuting action on k-subset tuples (--product m,k,r), or "
      "the Monte Carlo tail probability that a uniform permutation's cyclic "
      "group has minimal degree >= n^alpha (--n with --alpha).");
  c_mindeg->add_option("--perm", mindeg_opts.perm_text, "One-line images");
  c_mindeg->add_option("--type", mindeg_opts.type_text, "Cycle multiplicities");
  c_mindeg->add_option("--product", mindeg_opts.product_text, "m,k,r");
  c_mindeg->add_option("--n", mindeg_opts.n, "Degree for the Monte Carlo mode");
  c_mindeg->add_option("--alpha", mindeg_opts.alpha, "Exponent in (0,1)");
  mindeg_opts.common.attach(c_mindeg);

  auto* c_lg = app.add_subcommand(
      "local-global",
      "Comparison table: exact probability of a half/half invariant-set "
      "split vs. the Poisson-model estimate E|set|/k, with their ratio, for "
      "each even n in --n-list.");
  c_lg->add_option("--n-list", lg_opts.n_list_text, "Even degrees, e.g. 8,10,12")->required();
  lg_opts.common.attach(c_lg);

  auto* c_oracle = app.add_subcommand(
      "oracle-suite",
      "Instrument run recording the observed constants of the "
      "order-of-magnitude statements: divisible-cycle lower-bound ratio, "
      "prescribed-small-cycle ratio envelope, induced-action cycle-count "
      "ratio, and the half/half-vs-Poisson ratio envelope.");
  oracle_opts.common.attach(c_oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, "usage", e.what());
  }

  if (app.got_subcommand(c_exact_i)) return run_exact_i(exact_i_opts, false);
  if (app.got_subcommand(c_mc_i)) return run_exact_i(mc_i_opts, true);
  if (app.got_subcommand(c_exact_I)) return run_exact_I(exact_I_opts, false);
  if (app.got_subcommand(c_mc_I)) return run_exact_I(mc_I_opts, true);
  if (app.got_subcommand(c_lset)) return run_lset(lset_opts);
  if (app.got_subcommand(c_gbound)) return run_gbound(gbound_opts);
  if (app.got_subcommand(c_fdiv)) return run_fdiv(fdiv_opts);
  if (app.got_subcommand(c_delta)) return run_delta(delta_opts);
  if (app.got_subcommand(c_dominant)) return run_dominant(dominant_opts);
  if (app.got_subcommand(c_gf)) return run_gf_bound(gf_opts);
  if (app.got_subcommand(c_sieve)) return run_sieve_count(sieve_opts);
  if (app.got_subcommand(c_kset)) return run_kset_cycles(kset_opts);
  if (app.got_subcommand(c_wreath)) return run_wreath(wreath_opts);
  if (app.got_subcommand(c_mindeg)) return run_min_degree(mindeg_opts);
  if (app.got_subcommand(c_lg)) return run_local_global(lg_opts);
  if (app.got_subcommand(c_oracle)) return run_oracle_suite(oracle_opts);
  return fail(2, "usage", "no subcommand selected");
}

}  // namespace
}  // namespace fixset

int main(int argc, char** argv) {
  try {
    return fixset::dispatch(argc, argv);
  } catch (const fixset::CapError& e) {
    return fixset::fail(3, "cap", e.what());
  } catch (const fixset::DomainError& e) {
    return fixset::fail(4, "domain", e.what());
  } catch (const fixset::Error& e) {
    return fixset::fail(2, "usage", e.what());
  } catch (const std::exception& e) {
    return fixset::fail(1, "internal", e.what());
  }
}
