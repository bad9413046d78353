#include <bit>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dnacc/bounds.hpp"
#include "dnacc/channel.hpp"
#include "dnacc/indexcodes.hpp"
#include "dnacc/io.hpp"
#include "dnacc/metric.hpp"

namespace {

using namespace dnacc;

// Exit codes: 0 ok, 2 parse, 3 bad parameters, 4 verdict discrepancy,
// 5 budget, 6 unmet precondition.
int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
      return 2;
    case ErrorCode::BudgetExceeded:
      return 5;
    case ErrorCode::UnsupportedEd:
    case ErrorCode::UnsupportedD:
    case ErrorCode::AmbiguousMajority:
    case ErrorCode::PreconditionFailed:
      return 6;
    default:
      return 3;
  }
}

constexpr int kExitDiscrepancy = 4;

std::string fmt_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

// Budget resolution: explicit flag beats DNACC_BUDGET beats the built-in cap.
std::uint64_t resolve_budget(std::uint64_t flag_value, std::uint64_t fallback) {
  if (flag_value != 0) return flag_value;
  const char* s = std::getenv("DNACC_BUDGET");
  if (!s || !*s) return fallback;
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s, s + std::strlen(s), v);
  if (ec != std::errc() || *p != '\0' || v == 0)
    fail(ErrorCode::ParseError, "DNACC_BUDGET must be a positive integer");
  return v;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::ParseError, "cannot write file: " + path);
  out << text;
  if (!out) fail(ErrorCode::ParseError, "write failed: " + path);
}

void write_matrix_file(const std::string& path, const IndexCode& code) {
  std::ostringstream os;
  write_matrix(os, code);
  write_text_file(path, os.str());
}

ChannelParams channel_from(const std::string& tau, std::uint32_t ei,
                           std::uint32_t ed, std::uint32_t copies) {
  ChannelParams ch{Rational::parse(tau), ei, ed, copies};
  ch.validate();
  return ch;
}

struct DistanceOpts {
  std::string msg1, msg2;
  std::string format = "text";
};

int cmd_distance(const DistanceOpts& o) {
  Message a = message_from_json(load_json_file(o.msg1));
  Message b = message_from_json(load_json_file(o.msg2));
  DnaDistanceDetail det = dna_distance_detail(a, b);
  if (o.format == "json") {
    nlohmann::json j;
    if (det.distance.is_infinite())
      j["distance"] = "inf";
    else
      j["distance"] = det.distance.value();
    nlohmann::json fields = nlohmann::json::array();
    for (const auto& [data, w] : det.field_weights)
      fields.push_back({{"data", data.to_string()}, {"weight", w}});
    j["fields"] = std::move(fields);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (det.distance.is_infinite()) {
    std::cout << "D = inf\n";
  } else {
    std::cout << "D = " << det.distance.value() << "\n";
    for (const auto& [data, w] : det.field_weights)
      std::cout << "field " << data.to_string() << ": " << w << "\n";
  }
  return 0;
}

struct VerifyOpts {
  std::string codebook;
  std::string tau = "1";
  std::uint32_t ei = 0, ed = 0, copies = 1;
  std::string mode = "both";
  std::uint64_t budget = 0;
};

int cmd_verify_dcc(const VerifyOpts& o) {
  Codebook book = codebook_from_json(load_json_file(o.codebook));
  ChannelParams ch = channel_from(o.tau, o.ei, o.ed, o.copies);
  std::uint64_t budget = resolve_budget(o.budget, kDefaultEnumerationBudget);
  std::cout << "regime: " << regime_name(ch.regime()) << "\n";

  std::optional<BruteForceVerdict> brute;
  std::optional<DistanceVerdict> dist;
  if (o.mode == "brute" || o.mode == "both") {
    brute = is_dcc_brute(book.codewords, ch, budget);
    if (brute->is_dcc) {
      std::cout << "brute: dcc\n";
    } else {
      std::cout << "brute: not-dcc (codewords " << brute->violating_pair->first
                << " and " << brute->violating_pair->second
                << " share an output)\n";
    }
  }
  if (o.mode == "distance" || o.mode == "both") {
    dist = is_dcc_by_distance(book.codewords, ch);
    std::cout << "distance: " << verdict_name(dist->verdict) << " ("
              << dist->reason << ")\n";
  }
  if (brute && dist) {
    bool mismatch =
        (dist->verdict == Verdict::GuaranteedYes && !brute->is_dcc) ||
        (dist->verdict == Verdict::GuaranteedNo && brute->is_dcc);
    if (mismatch) {
      std::cerr << "DISCREPANCY: brute force and the distance verdict "
                   "disagree on a guaranteed case\n";
      return kExitDiscrepancy;
    }
    std::cout << (dist->verdict == Verdict::Inconclusive
                      ? "agreement: not applicable (inconclusive)\n"
                      : "agreement: yes\n");
  }
  return 0;
}

struct ConstructOpts {
  std::string method;
  std::uint32_t l = 0, m = 0, d = 0;
  std::string input, output;
  std::uint64_t seed = 0;
  bool have_seed = false;
  std::uint64_t attempts = 20'000;
  std::uint64_t budget = 0;
  std::uint64_t vertex_budget = 0, node_budget = 0;
};

IndexCode read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot read file: " + path);
  return read_matrix(in);
}

std::uint32_t log2_of_power(std::uint32_t m) {
  std::uint32_t l = 0;
  while ((1u << l) < m) ++l;
  if ((1u << l) != m)
    fail(ErrorCode::NotPowerOfTwo,
         "M must be a power of two, got " + std::to_string(m));
  return l;
}

int cmd_construct(const ConstructOpts& o) {
  std::uint64_t row_budget = resolve_budget(o.budget, kDefaultRowBudget);
  if (o.output.empty() && o.method != "search-exact")
    fail(ErrorCode::PreconditionFailed, "construct needs -o <matrix>");
  if (o.method == "coset") {
    if (o.m == 0 || o.d == 0)
      fail(ErrorCode::PreconditionFailed, "coset needs --M and --d");
    std::uint32_t l = log2_of_power(o.m);
    std::optional<LinearInnerCode> inner;
    if (o.d == 2) {
      inner = LinearInnerCode::parity_check(l);
    } else if (o.d == 3) {
      std::uint32_t m_param = 0;
      while ((1u << m_param) - 1 < l) ++m_param;
      if ((1u << m_param) - 1 != l)
        fail(ErrorCode::InvalidInner,
             "d=3 needs log2(M) of the form 2^m - 1, got " + std::to_string(l));
      inner = LinearInnerCode::hamming(m_param);
    } else {
      fail(ErrorCode::UnsupportedD,
           "coset construction supports d in {2, 3}, got " +
               std::to_string(o.d));
    }
    CosetConstructionResult res = construct_coset(o.m, o.d, *inner, row_budget);
    write_matrix_file(o.output, res.code);
    const auto& r = res.report;
    std::cout << "rows = " << res.code.rows.size() << "\n"
              << "base rows = " << r.base_rows << " (formula "
              << r.base_formula.str() << ")\n"
              << "augmented rows = " << r.augmented_accepted << " of "
              << r.augmented_candidates << " candidates (formula "
              << r.augmented_formula.str() << ", " << r.survivor_words
              << " augmentation words)\n"
              << "dropped = " << r.dropped.size() << "\n";
    for (const auto& drop : r.dropped) {
      std::cout << "dropped row";
      for (const auto& e : drop.row.entries()) std::cout << " " << e.to_string();
      std::cout << " conflicts with row " << drop.conflicting_row
                << " at distance " << drop.observed_distance << "\n";
    }
    return 0;
  }
  if (o.method == "extend") {
    if (o.input.empty())
      fail(ErrorCode::PreconditionFailed, "extend needs -i <matrix>");
    IndexCode base = read_matrix_file(o.input);
    IndexCode out = construct_extend(base, row_budget);
    write_matrix_file(o.output, out);
    std::cout << "rows = " << out.rows.size() << " (from "
              << base.rows.size() << " input rows, l " << base.params.index_length
              << " -> " << out.params.index_length << ")\n";
    return 0;
  }
  if (o.method == "search-exact") {
    if (o.l == 0 || o.m == 0 || o.d == 0)
      fail(ErrorCode::PreconditionFailed, "search-exact needs --l, --M, --d");
    ExactSearchResult res = search_exact_max_code(
        o.l, o.m, o.d, resolve_budget(o.vertex_budget, kDefaultVertexBudget),
        resolve_budget(o.node_budget, kDefaultNodeBudget));
    std::cout << "F = " << res.size.str() << "\n";
    if (!o.output.empty()) {
      if (!res.code)
        fail(ErrorCode::BudgetExceeded,
             "maximum code too large to materialize into a matrix file");
      write_matrix_file(o.output, *res.code);
      std::cout << "rows = " << res.code->rows.size() << "\n";
    }
    return 0;
  }
  if (o.method == "search-greedy") {
    if (o.l == 0 || o.m == 0 || o.d == 0)
      fail(ErrorCode::PreconditionFailed, "search-greedy needs --l, --M, --d");
    if (!o.have_seed)
      fail(ErrorCode::PreconditionFailed, "search-greedy needs --seed");
    std::optional<IndexCode> warm;
    if (!o.input.empty()) warm = read_matrix_file(o.input);
    IndexCode out = search_greedy(o.l, o.m, o.d, o.seed, o.attempts, warm);
    write_matrix_file(o.output, out);
    std::cout << "rows = " << out.rows.size() << "\n";
    return 0;
  }
  fail(ErrorCode::PreconditionFailed, "unknown method: " + o.method);
}

struct BoundsOpts {
  std::uint32_t l = 0, m = 0, d = 0;
  bool sweep = false;
  std::string format;
  std::uint64_t vertex_budget = 0, node_budget = 0;
};

nlohmann::json bound_to_json(std::uint32_t l, std::uint32_t m, std::uint32_t d,
                             const BoundReport& r) {
  nlohmann::json j{{"l", l},         {"M", m},
                   {"d", d},         {"name", r.name},
                   {"exact", r.exact}, {"floor", r.floor_value.str()},
                   {"log2", r.log2_value}};
  if (r.real_value)
    j["real"] = *r.real_value;
  else
    j["real"] = nullptr;
  return j;
}

std::string bound_to_csv(std::uint32_t l, std::uint32_t m, std::uint32_t d,
                         const BoundReport& r) {
  std::string row = std::to_string(l) + "," + std::to_string(m) + "," +
                    std::to_string(d) + "," + r.name + "," +
                    (r.exact ? "true" : "false") + "," + r.floor_value.str() +
                    "," + fmt_double(r.log2_value) + ",";
  if (r.real_value) row += fmt_double(*r.real_value);
  return row;
}

// Bound table for one (l, M, d): packing bounds when l = log2(M), the exact
// maximum when the search fits its budgets, construction sizes when defined.
std::vector<BoundReport> bound_table(std::uint32_t l, std::uint32_t m,
                                     std::uint32_t d,
                                     std::uint64_t vertex_budget,
                                     std::uint64_t node_budget) {
  std::vector<BoundReport> out;
  bool l_matches = std::has_single_bit(m) &&
                   static_cast<std::uint32_t>(std::countr_zero(m)) == l;
  if (l_matches) {
    out.push_back(sphere_packing_bound(m, d));
    if (d <= l + 1) out.push_back(singleton_bound(m, d));
  }
  try {
    ExactSearchResult res = search_exact_max_code(l, m, d, vertex_budget,
                                                  node_budget);
    BoundReport r;
    r.name = "exact-search";
    r.inputs = "l=" + std::to_string(l) + " M=" + std::to_string(m) +
               " d=" + std::to_string(d);
    r.exact = true;
    r.floor_value = res.size;
    r.log2_value = log2_double(res.size);
    double as_double = static_cast<BigFloat>(res.size).convert_to<double>();
    if (std::isfinite(as_double)) r.real_value = as_double;
    out.push_back(std::move(r));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    // Out of budget: the table simply omits the exact value.
  }
  if (l_matches && (d == 2 || d == 3)) {
    try {
      ConstructionSize cs = coset_construction_size(m, d);
      out.push_back(cs.primary);
      if (cs.augmented) out.push_back(*cs.augmented);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::BudgetExceeded) throw;
      // Shape prerequisites unmet: no construction entry.
    }
  }
  return out;
}

int cmd_bounds(const BoundsOpts& o) {
  if (o.l == 0 || o.m == 0)
    fail(ErrorCode::PreconditionFailed, "bounds needs --l and --M");
  if (!o.sweep && o.d == 0)
    fail(ErrorCode::PreconditionFailed, "bounds needs --d (or --sweep)");
  std::uint64_t vb = resolve_budget(o.vertex_budget, kDefaultVertexBudget);
  std::uint64_t nb = resolve_budget(o.node_budget, kDefaultNodeBudget);
  std::string format = o.format.empty() ? (o.sweep ? "csv" : "json") : o.format;

  std::vector<std::uint32_t> ds;
  if (o.sweep)
    for (std::uint32_t d = 1; d <= o.l + 1; ++d) ds.push_back(d);
  else
    ds.push_back(o.d);

  if (format == "csv") {
    std::cout << "l,M,d,name,exact,floor,log2,real\n";
    for (auto d : ds)
      for (const auto& r : bound_table(o.l, o.m, d, vb, nb))
        std::cout << bound_to_csv(o.l, o.m, d, r) << "\n";
    return 0;
  }
  nlohmann::json arr = nlohmann::json::array();
  for (auto d : ds)
    for (const auto& r : bound_table(o.l, o.m, d, vb, nb))
      arr.push_back(bound_to_json(o.l, o.m, d, r));
  std::cout << arr.dump(2) << "\n";
  return 0;
}

struct BallOpts {
  std::uint32_t r = 0, m = 0;
};

int cmd_ball_size(const BallOpts& o) {
  std::cout << permutation_ball_size(o.r, o.m).str() << "\n";
  return 0;
}

struct SimulateOpts {
  std::string msg;
  std::string tau = "0";
  std::uint32_t ei = 0, ed = 0, copies = 1;
  std::uint64_t seed = 0;
  bool worst_case = false;
  bool decode = false;
  std::string output;
};

int cmd_simulate(const SimulateOpts& o) {
  Message z = message_from_json(load_json_file(o.msg));
  ChannelParams ch = channel_from(o.tau, o.ei, o.ed, o.copies);
  ReadPool pool = sample_channel_output(z, ch, o.seed, o.worst_case);
  std::string pool_text = read_pool_to_json(pool).dump(2) + "\n";
  if (o.output.empty()) {
    std::cout << pool_text;
  } else {
    write_text_file(o.output, pool_text);
    std::cout << "pool: " << pool.total() << " reads, "
              << pool.entries().size() << " distinct\n";
  }
  if (!o.decode) return 0;

  if (ch.regime() != Regime::Low)
    fail(ErrorCode::PreconditionFailed,
         std::string("decoding requires the low regime, channel is ") +
             regime_name(ch.regime()));
  if (!is_distinct_data(z))
    fail(ErrorCode::PreconditionFailed,
         "decoding requires a source with pairwise distinct data fields");
  Message decoded = plurality_decode(pool, z.params(), ch);
  std::cout << "decoded: " << message_to_json(decoded).dump() << "\n";
  std::cout << (decoded == z ? "decode: match\n" : "decode: mismatch\n");
  return 0;
}

struct EnumerateOpts {
  std::string msg;
  std::string tau = "1";
  std::uint32_t ei = 0, ed = 0, copies = 1;
  std::uint64_t budget = 0;
  std::string output;
};

int cmd_enumerate(const EnumerateOpts& o) {
  Message z = message_from_json(load_json_file(o.msg));
  ChannelParams ch = channel_from(o.tau, o.ei, o.ed, o.copies);
  auto pools =
      enumerate_channel_outputs(z, ch, resolve_budget(o.budget,
                                                      kDefaultEnumerationBudget));
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : pools) arr.push_back(read_pool_to_json(p));
  nlohmann::json doc{{"count", pools.size()}, {"pools", std::move(arr)}};
  if (o.output.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    write_text_file(o.output, doc.dump(2) + "\n");
    std::cout << "pools: " << pools.size() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DNA-correcting codes: distances, channel checks, "
               "constructions, bounds"};
  app.require_subcommand(1);

  DistanceOpts dopt;
  auto* dist = app.add_subcommand(
      "distance", "DNA distance between two message files");
  dist->add_option("msg1", dopt.msg1, "first message JSON")->required();
  dist->add_option("msg2", dopt.msg2, "second message JSON")->required();
  dist->add_option("--format", dopt.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  VerifyOpts vopt;
  auto* verify = app.add_subcommand(
      "verify-dcc", "check whether a codebook corrects the channel");
  verify->add_option("codebook", vopt.codebook, "codebook JSON")->required();
  verify->add_option("--tau", vopt.tau, "erroneous-read fraction")->required();
  verify->add_option("--ei", vopt.ei, "per-read index error budget")->required();
  verify->add_option("--ed", vopt.ed, "per-read data error budget")->required();
  verify->add_option("--K", vopt.copies, "reads per strand")->required();
  verify->add_option("--mode", vopt.mode, "brute|distance|both")
      ->check(CLI::IsMember({"brute", "distance", "both"}));
  verify->add_option("--budget", vopt.budget, "enumeration budget");

  ConstructOpts copt;
  auto* construct = app.add_subcommand("construct", "build an index code");
  construct
      ->add_option("--method", copt.method,
                   "coset|extend|search-exact|search-greedy")
      ->required()
      ->check(CLI::IsMember({"coset", "extend", "search-exact",
                             "search-greedy"}));
  construct->add_option("--l", copt.l, "index length");
  construct->add_option("--M", copt.m, "strand count");
  construct->add_option("--d", copt.d, "minimum distance");
  construct->add_option("-i,--input", copt.input,
                        "input matrix (extend, greedy warm start)");
  construct->add_option("-o,--output", copt.output, "output matrix path");
  auto* seed_opt = construct->add_option("--seed", copt.seed, "search seed");
  construct->add_option("--attempts", copt.attempts,
                        "greedy sampling attempts");
  construct->add_option("--budget", copt.budget, "row budget");
  construct->add_option("--vertex-budget", copt.vertex_budget,
                        "search vertex budget");
  construct->add_option("--node-budget", copt.node_budget,
                        "search node budget");

  BoundsOpts bopt;
  auto* bounds = app.add_subcommand("bounds", "size bounds for index codes");
  bounds->add_option("--l", bopt.l, "index length")->required();
  bounds->add_option("--M", bopt.m, "strand count")->required();
  bounds->add_option("--d", bopt.d, "minimum distance");
  bounds->add_flag("--sweep", bopt.sweep, "table over d = 1 .. l+1");
  bounds->add_option("--format", bopt.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  bounds->add_option("--vertex-budget", bopt.vertex_budget,
                     "search vertex budget");
  bounds->add_option("--node-budget", bopt.node_budget, "search node budget");

  BallOpts ballopt;
  auto* ball = app.add_subcommand(
      "ball-size", "permutation-ball size via the matrix permanent");
  ball->add_option("--r", ballopt.r, "radius")->required();
  ball->add_option("--M", ballopt.m, "strand count (power of two)")->required();

  SimulateOpts sopt;
  auto* simulate = app.add_subcommand("simulate", "draw one channel output");
  simulate->add_option("msg", sopt.msg, "message JSON")->required();
  simulate->add_option("--tau", sopt.tau, "erroneous-read fraction")->required();
  simulate->add_option("--ei", sopt.ei, "per-read index error budget")->required();
  simulate->add_option("--ed", sopt.ed, "per-read data error budget")->required();
  simulate->add_option("--K", sopt.copies, "reads per strand")->required();
  simulate->add_option("--seed", sopt.seed, "RNG seed")->required();
  simulate->add_flag("--worst-case", sopt.worst_case,
                     "pin error count and weights to their maxima");
  simulate->add_flag("--decode", sopt.decode,
                     "plurality-decode the pool (low regime only)");
  simulate->add_option("-o,--output", sopt.output, "pool JSON path");

  EnumerateOpts eopt;
  auto* enumerate =
      app.add_subcommand("enumerate", "every pool the channel can emit");
  enumerate->add_option("msg", eopt.msg, "message JSON")->required();
  enumerate->add_option("--tau", eopt.tau, "erroneous-read fraction")->required();
  enumerate->add_option("--ei", eopt.ei, "per-read index error budget")->required();
  enumerate->add_option("--ed", eopt.ed, "per-read data error budget")->required();
  enumerate->add_option("--K", eopt.copies, "reads per strand")->required();
  enumerate->add_option("--budget", eopt.budget, "enumeration budget");
  enumerate->add_option("-o,--output", eopt.output, "pools JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (dist->parsed()) return cmd_distance(dopt);
    if (verify->parsed()) return cmd_verify_dcc(vopt);
    if (construct->parsed()) {
      copt.have_seed = seed_opt->count() > 0;
      return cmd_construct(copt);
    }
    if (bounds->parsed()) return cmd_bounds(bopt);
    if (ball->parsed()) return cmd_ball_size(ballopt);
    if (simulate->parsed()) return cmd_simulate(sopt);
    if (enumerate->parsed()) return cmd_enumerate(eopt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << " ["
              << error_code_name(e.code()) << "]\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
