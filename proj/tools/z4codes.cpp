// z4codes: generate code sets, verify the closed forms, profile correlations.
//
// Exit status: 0 success, 1 verification counterexample, 2 I/O or format error.

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "z4codes/codegen.hpp"
#include "z4codes/codeset_io.hpp"
#include "z4codes/shiftreg.hpp"
#include "z4codes/stats.hpp"
#include "z4codes/verify.hpp"

using namespace z4codes;

namespace {

constexpr int kExitCounterexample = 1;
constexpr int kExitIo = 2;

int env_threads() {
  const char* s = std::getenv("Z4CODES_THREADS");
  if (!s || !*s) return 0;
  const int n = std::atoi(s);
  return n > 0 ? n : 0;
}

kernels::Mode parse_mode(const std::string& s) { return s == "exact" ? kernels::Mode::exact : kernels::Mode::accelerated; }

// Same family as build_family/select_balanced_subset, but every parent code comes
// from the shift registers.
FamilySet family_from_registers(FamilyKind kind) {
  const bool small_set = kind != FamilyKind::D;
  const auto& ys = small_set ? index_set_J() : index_set_H();
  std::vector<QuaternaryCode> parents(2 * ys.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < parents.size(); ++i) {
    parents[i] = shiftreg::generate(CodeIndex{static_cast<std::uint8_t>(i / ys.size()), ys[i % ys.size()]});
  }
  FamilySet fam = build_family(kind == FamilyKind::IZ4_2S ? FamilyKind::IZ4_2 : kind);
  if (fam.is_binary()) {
    for (std::size_t i = 0; i < parents.size(); ++i) {
      auto c = components(parents[i]);
      fam.binary[i] = std::move(c.qp);
      fam.binary[parents.size() + i] = std::move(c.ip);
    }
  } else {
    fam.quaternary = std::move(parents);
  }
  return fam;
}

// First differing (code, t) between two families of the same kind, if any.
bool report_mismatch(const FamilySet& a, const FamilySet& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& sa = a.is_binary() ? a.binary[k].bits : a.quaternary[k].symbols;
    const auto& sb = b.is_binary() ? b.binary[k].bits : b.quaternary[k].symbols;
    for (std::size_t t = 0; t < sa.size(); ++t) {
      if (sa[t] != sb[t]) {
        const std::string id = a.is_binary() ? code_id(a.binary[k]) : code_id(a.quaternary[k]);
        std::cerr << "engine mismatch: code " << id << " t=" << t << " algebraic=" << int(sa[t])
                  << " shiftreg=" << int(sb[t]) << "\n";
        return true;
      }
    }
  }
  return false;
}

struct GenerateArgs {
  std::string family = "MFD2";
  std::string engine = "algebraic";
  std::string out;
  int balance_threshold = 2;
  int odd_screen = 198;
  std::string mode = "accelerated";
};

int cmd_generate(const GenerateArgs& g, int threads) {
  const FamilyKind kind = parse_family_kind(g.family);
  if (kind == FamilyKind::External) throw std::invalid_argument("cannot generate an External family");
  const FamilyKind base = kind == FamilyKind::IZ4_2S ? FamilyKind::IZ4_2 : kind;
  FamilySet fam = build_family(base);
  if (g.engine == "shiftreg") {
    FamilySet sr = family_from_registers(base);
    if (report_mismatch(fam, sr)) return kExitCounterexample;
    fam = std::move(sr);
  }
  if (kind == FamilyKind::IZ4_2S) {
    fam = select_balanced_subset(fam, g.balance_threshold);
    if (g.odd_screen >= 0) fam = stats::screen_odd_correlation(fam, g.odd_screen, parse_mode(g.mode), threads);
  }
  const std::string text = io::store(fam, g.engine);
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
  } else {
    io::store_file(g.out, fam, g.engine);
    std::cerr << "wrote " << fam.size() << " codes to " << g.out << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& what, std::uint64_t seed, std::size_t count) {
  std::vector<verify::Result> results;
  const bool all = what == "all";
  auto wants = [&](const char* name) { return all || what == name; };
  if (wants("dual_basis")) results.push_back(verify::dual_basis());
  if (wants("graeffe")) results.push_back(verify::graeffe());
  if (wants("sr_equivalence")) results.push_back(verify::sr_equivalence());
  if (wants("theorem1")) results.push_back(verify::theorem1(seed, count ? count : 100));
  if (wants("binary_identities")) results.push_back(verify::binary_identities(seed, count ? count : 50));
  if (wants("value_sets")) results.push_back(verify::value_sets(seed, count ? count : 50));
  if (wants("bounds")) results.push_back(verify::bounds(seed, count ? count : 50));
  if (wants("accelerated")) results.push_back(verify::accelerated_vs_exact(seed, count ? count : 1000, 10));
  if (results.empty()) throw std::invalid_argument("unknown verification suite '" + what + "'");
  bool ok = true;
  for (const auto& r : results) {
    std::printf("%-20s %s  checks=%llu  %s\n", r.name.c_str(), r.passed ? "ok" : "COUNTEREXAMPLE",
                static_cast<unsigned long long>(r.checks), r.summary.c_str());
    for (const auto& c : r.counterexamples) std::printf("    %s\n", c.c_str());
    ok = ok && r.passed;
  }
  return ok ? 0 : kExitCounterexample;
}

void print_row(const char* label, const std::optional<stats::Extreme>& e, std::size_t n) {
  if (!e) return;
  std::printf("  %-14s %8.2f dB   |rho| = %.2f\n", label, stats::to_db(e->magnitude(), n), e->magnitude());
}

void print_distribution(const char* label, const stats::Distribution& d, std::size_t n) {
  const auto m = [](std::uint64_t norm) { return std::sqrt(static_cast<double>(norm)); };
  std::printf("  %s\n", label);
  std::printf("    %-12s %8.2f dB   |rho| = %.2f\n", "RMS", stats::to_db(d.rms_magnitude, n), d.rms_magnitude);
  std::printf("    %-12s %8.2f dB   |rho| = %.2f\n", "99%", stats::to_db(m(d.p99_norm), n), m(d.p99_norm));
  std::printf("    %-12s %8.2f dB   |rho| = %.2f\n", "99.9%", stats::to_db(m(d.p999_norm), n), m(d.p999_norm));
}

struct ProfileArgs {
  std::string codeset;
  bool odd = false;
  std::string mode = "accelerated";
  std::string out;
  std::string cdf;
};

int cmd_profile(const ProfileArgs& a, int threads) {
  const FamilySet fam = io::load_file(a.codeset);
  stats::ProfileOptions opt;
  opt.include_odd = a.odd;
  opt.mode = parse_mode(a.mode);
  opt.threads = threads;
  const stats::FamilyProfile p = stats::family_profile(fam, opt);
  const std::size_t n = p.length;

  std::printf("%s: %zu codes of length %zu (%s mode, %.1f s)\n", to_string(fam.kind).c_str(), p.family_size, n,
              a.mode.c_str(), p.seconds);
  print_row("Even ACR", p.even_acr, n);
  print_row("Even CCR", p.even_ccr, n);
  print_row("Odd ACR", p.odd_acr, n);
  print_row("Odd CCR", p.odd_ccr, n);
  print_distribution("all values (auto sidelobes + cross)", p.all, n);
  if (p.cross_only.count) print_distribution("cross values only", p.cross_only, n);
  std::printf("  CDF at |rho| = 80: %.2f %%\n", stats::cdf_percent_at(p.histogram, 80.0));
  if (!p.balance_histogram.empty()) {
    std::printf("  balance:");
    for (const auto& [b, c] : p.balance_histogram) std::printf(" %d:%zu", b, c);
    std::printf("\n");
  }

  if (!a.out.empty()) {
    nlohmann::json j = stats::to_json(p);
    j["family"] = to_string(fam.kind);
    j["source"] = a.codeset;
    j["conventions"] = {
        {"odd_correlation", "sum over t < N-tau of s1(t+tau)s2*(t) minus the wrapped part"},
        {"auto_tau0", "excluded"},
        {"cross_tau0", "included"},
        {"pair_weighting", "ordered pairs"},
        {"percentiles", "nearest rank on |rho|"},
        {"db", "20 log10(|rho| / N)"},
        {"mode", a.mode},
        {"ordering", fam.metadata.ordering},
        {"odd_screen_magnitude", fam.metadata.odd_screen_magnitude},
        {"balance_threshold", fam.metadata.balance_threshold}};
    std::ofstream out(a.out);
    if (!out || !(out << j.dump(2) << '\n')) throw std::runtime_error("cannot write " + a.out);
  }
  if (!a.cdf.empty()) {
    std::ofstream out(a.cdf);
    if (!out || !(out << stats::cdf_csv(p.histogram))) throw std::runtime_error("cannot write " + a.cdf);
  }
  return 0;
}

int cmd_paircheck(const std::string& pilot_path, const std::string& data_path, std::size_t count) {
  const FamilySet pilots = io::load_file(pilot_path);
  const FamilySet data = io::load_file(data_path);
  if (!pilots.is_binary() || !data.is_binary()) throw io::FormatError("paircheck needs binary code sets");
  if (count > pilots.size() || count > data.size()) throw io::FormatError("count exceeds the number of codes");
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const std::int64_t s = stats::paired_orthogonality(pilots.binary[k], data.binary[k]);
    if (s != 0) {
      ++nonzero;
      std::printf("pair %zu (%s, %s): %lld\n", k, code_id(pilots.binary[k]).c_str(), code_id(data.binary[k]).c_str(),
                  static_cast<long long>(s));
    }
  }
  std::printf("%zu pairs checked, %zu nonzero inner products\n", count, nonzero);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Z4-linear spreading code families: generation, verification and correlation profiles"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "write a code-set file");
  g->add_option("--family", gen.family, "D, MFD2, IZ4_2 or IZ4_2S")->check(CLI::IsMember({"D", "MFD2", "IZ4_2", "IZ4_2S"}));
  g->add_option("--engine", gen.engine, "algebraic or shiftreg")->check(CLI::IsMember({"algebraic", "shiftreg"}));
  g->add_option("--out", gen.out, "output path (stdout if omitted)");
  g->add_option("--balance-threshold", gen.balance_threshold, "IZ4_2S: keep |balance| <= this");
  g->add_option("--odd-screen", gen.odd_screen, "IZ4_2S: odd-correlation bound for screening, -1 to disable");
  g->add_option("--mode", gen.mode, "correlation engine for screening")->check(CLI::IsMember({"exact", "accelerated"}));

  std::string what = "all";
  std::uint64_t seed = verify::kDefaultSeed;
  std::size_t vcount = 0;
  auto* v = app.add_subcommand("verify", "run an oracle-equivalence suite");
  v->add_option("what", what, "theorem1, binary_identities, dual_basis, graeffe, sr_equivalence, value_sets, bounds, accelerated, all")
      ->check(CLI::IsMember({"theorem1", "binary_identities", "dual_basis", "graeffe", "sr_equivalence", "value_sets",
                             "bounds", "accelerated", "all"}));
  v->add_option("--seed", seed, "seed for randomized suites");
  v->add_option("--count", vcount, "pairs (or spot checks) for randomized suites");

  ProfileArgs prof;
  auto* p = app.add_subcommand("profile", "correlation profile of a code-set file");
  p->add_option("codeset", prof.codeset, "code-set file")->required();
  p->add_flag("--odd", prof.odd, "include odd correlation");
  p->add_option("--mode", prof.mode, "exact or accelerated")->check(CLI::IsMember({"exact", "accelerated"}));
  p->add_option("--out", prof.out, "JSON report path");
  p->add_option("--cdf", prof.cdf, "CDF CSV path");

  std::string pilot_path, data_path;
  std::size_t pcount = 0;
  auto* pc = app.add_subcommand("paircheck", "zero-shift inner products of pilot/data pairs");
  pc->add_option("pilot", pilot_path, "pilot code set (10230 chips)")->required();
  pc->add_option("data", data_path, "data code set (2046 chips)")->required();
  pc->add_option("--count", pcount, "number of leading pairs");

  CLI11_PARSE(app, argc, argv);

  const int threads = env_threads();
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*g) return cmd_generate(gen, threads);
    if (*v) return cmd_verify(what, seed, vcount);
    if (*p) return cmd_profile(prof, threads);
    if (*pc) return cmd_paircheck(pilot_path, data_path, pcount);
  } catch (const io::FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
