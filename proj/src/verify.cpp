#include "z4codes/verify.hpp"

#include <random>
#include <sstream>

#include "z4codes/codegen.hpp"
#include "z4codes/correlation_kernels.hpp"
#include "z4codes/shiftreg.hpp"

namespace z4codes::verify {
namespace {

constexpr std::size_t kMaxCounterexamples = 5;

const FamilySet& mfd2() {
  static const FamilySet f = build_family(FamilyKind::MFD2);
  return f;
}

struct PairArrays {
  std::vector<GaussInt> phi, delta;
};

PairArrays reference_arrays(const QuaternaryCode& a, const QuaternaryCode& b) {
  PairArrays p{std::vector<GaussInt>(kPeriod), std::vector<GaussInt>(kPeriod)};
  kernels::correlate_reference(a.symbols, b.symbols, CorrelationKind::even, p.phi);
  kernels::correlate_reference(a.symbols, b.symbols, CorrelationKind::anti, p.delta);
  return p;
}

std::string pair_label(const QuaternaryCode& a, const QuaternaryCode& b, int tau) {
  return "(" + code_id(a) + ", " + code_id(b) + ") tau=" + std::to_string(tau);
}

// Run `body` on every sampled pair in parallel, then merge results in sample order.
template <typename Body>
Result over_pairs(const std::string& name, std::uint64_t seed, std::size_t count, Body body) {
  const auto& fam = mfd2();
  const auto pairs = sample_pairs(seed, count, fam.quaternary.size());
  std::vector<Result> parts(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    body(fam.quaternary[pairs[k].first], fam.quaternary[pairs[k].second], parts[k]);
  }
  Result r;
  r.name = name;
  for (auto& p : parts) {
    r.checks += p.checks;
    for (auto& c : p.counterexamples) r.fail(std::move(c));
    if (!p.passed) r.passed = false;
  }
  return r;
}

const BinaryCode& pick(const Components& c, Phase p) { return p == Phase::QP ? c.qp : c.ip; }

}  // namespace

void Result::fail(std::string detail) {
  passed = false;
  if (counterexamples.size() < kMaxCounterexamples) counterexamples.push_back(std::move(detail));
}

std::string format(GaussInt z) {
  std::ostringstream os;
  os << z.re << (z.im < 0 ? "-" : "+") << (z.im < 0 ? -z.im : z.im) << "i";
  return os.str();
}

std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::uint64_t seed, std::size_t count,
                                                              std::size_t family_size) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::size_t, std::size_t>> out(count);
  for (auto& p : out) {
    p.first = rng() % family_size;
    p.second = rng() % family_size;
  }
  return out;
}

Result theorem1(std::uint64_t seed, std::size_t pairs) {
  Result r = over_pairs("theorem1", seed, pairs, [](const QuaternaryCode& a, const QuaternaryCode& b, Result& out) {
    const PairArrays ref = reference_arrays(a, b);
    for (int tau = 0; tau < kPeriod; ++tau) {
      const ClosedFormInputs in{a.index.x, b.index.x, a.index.y, b.index.y, tau};
      const GaussInt two_psi = phi_closed(in).value;
      const GaussInt single = phi_closed_single_e(in).value;
      const GaussInt anti = delta_closed(in).value;
      out.checks += 3;
      if (two_psi != ref.phi[tau]) {
        out.fail("phi two-psi " + pair_label(a, b, tau) + " expected " + format(ref.phi[tau]) + " got " + format(two_psi));
      }
      if (single != ref.phi[tau]) {
        out.fail("phi single-e " + pair_label(a, b, tau) + " expected " + format(ref.phi[tau]) + " got " + format(single));
      }
      if (anti != ref.delta[tau]) {
        out.fail("Delta " + pair_label(a, b, tau) + " expected " + format(ref.delta[tau]) + " got " + format(anti));
      }
    }
  });
  r.summary = std::to_string(pairs) + " pairs x 2046 shifts, closed forms vs direct sums";
  return r;
}

Result binary_identities(std::uint64_t seed, std::size_t pairs) {
  Result r = over_pairs("binary_identities", seed, pairs, [](const QuaternaryCode& a, const QuaternaryCode& b, Result& out) {
    const PairArrays ref = reference_arrays(a, b);
    const Components ca = components(a), cb = components(b);
    for (int tau = 0; tau < kPeriod; ++tau) {
      for (Phase p1 : {Phase::QP, Phase::IP}) {
        for (Phase p2 : {Phase::QP, Phase::IP}) {
          const std::int64_t direct = binary_corr_brute(pick(ca, p1), pick(cb, p2), tau);
          const std::int64_t via = binary_from_quaternary(p1, p2, ref.phi[tau], ref.delta[tau]);
          ++out.checks;
          if (direct != via) {
            out.fail(to_string(p1) + "/" + to_string(p2) + " " + pair_label(a, b, tau) + " expected " +
                     std::to_string(direct) + " got " + std::to_string(via));
          }
        }
      }
    }
  });
  r.summary = std::to_string(pairs) + " pairs x 2046 shifts x 4 phase combinations";
  return r;
}

Result dual_basis() {
  Result r;
  r.name = "dual_basis";
  try {
    const auto& db = gf2m::dual_basis();
    for (int j = 0; j < kDegree; ++j) {
      ++r.checks;
      const int lg = gf2m::discrete_log(db[j]);
      if (lg != gf2m::kDualBasisLogs[j]) {
        r.fail("delta_" + std::to_string(j) + " = alpha^" + std::to_string(lg) + ", table says alpha^" +
               std::to_string(gf2m::kDualBasisLogs[j]));
      }
      for (int i = 0; i < kDegree; ++i) {
        ++r.checks;
        if (gf2m::trace(gf2m::alpha_pow(i) * db[j]) != (i == j ? 1 : 0)) {
          r.fail("tr(alpha^" + std::to_string(i) + " delta_" + std::to_string(j) + ") wrong");
        }
      }
    }
    // 1 = d1 + d2 + d4 + d7 + d8, theta = d0 + d9
    r.checks += 2;
    if (gf2m::dual_coords(gf2m::kOne) != 0b01'1001'0110) r.fail("expansion of 1 differs");
    if (gf2m::dual_coords(gf2m::theta()) != 0b10'0000'0001) r.fail("expansion of theta differs");
  } catch (const std::exception& e) {
    r.fail(e.what());
  }
  r.summary = "trace-dual basis exponents and expansions of 1 and theta";
  return r;
}

Result graeffe() {
  Result r;
  r.name = "graeffe";
  const gr4m::Z4Poly printed_nu = {1, 2, 1, 1, 0, 0, 1, 2, 3, 1, 1};
  // Annihilating m_beta and its product with (x + 1), worked out by hand from
  // m_nu(beta) = 2 theta nu m_nu'(nu) = 2(alpha + 1).
  const gr4m::Z4Poly expected_beta = {3, 0, 1, 1, 0, 0, 1, 2, 3, 1, 1};
  const gr4m::Z4Poly expected_char = {3, 3, 1, 2, 1, 0, 1, 3, 1, 0, 2, 1};
  try {
    ++r.checks;
    if (gr4m::graeffe_lift(gf2m::kModulus) != printed_nu) r.fail("graeffe_lift(m_alpha) differs from printed m_nu");
    ++r.checks;
    if (gr4m::evaluate(printed_nu, gr4m::kNu) != gr4m::kRingZero) r.fail("m_nu(nu) != 0");
    ++r.checks;
    if (shiftreg::min_poly_beta() != expected_beta) r.fail("m_beta differs from m_nu + 2(x + 1)");
    ++r.checks;
    if (gr4m::evaluate(expected_beta, beta()) != gr4m::kRingZero) r.fail("m_beta(beta) != 0");
    ++r.checks;
    if (shiftreg::char_poly() != expected_char) r.fail("characteristic polynomial differs");
    ++r.checks;
    if (gr4m::evaluate(shiftreg::char_poly(), beta()) != gr4m::kRingZero) r.fail("char_poly(beta) != 0");
  } catch (const std::exception& e) {
    r.fail(e.what());
  }
  r.summary = "m_nu, the annihilating m_beta and the degree-11 characteristic polynomial";
  return r;
}

Result sr_equivalence() {
  Result r;
  r.name = "sr_equivalence";
  const auto& fam = mfd2();
  const auto& c = shiftreg::char_poly();
  std::vector<Result> parts(fam.quaternary.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < fam.quaternary.size(); ++k) {
    const QuaternaryCode& q = fam.quaternary[k];
    Result& out = parts[k];
    shiftreg::RegisterState s = shiftreg::seed_from_index(q.index);
    const Components comp = components(q);
    for (int t = 0; t < kPeriod; ++t) {
      const auto o = shiftreg::step(s);
      ++out.checks;
      if (o.q != q.symbols[t] || o.v != comp.qp.bits[t] || o.w != comp.ip.bits[t]) {
        out.fail(code_id(q) + " first differs at t=" + std::to_string(t));
        break;
      }
      // Degree-11 recursion, cyclically.
      int acc = 0;
      for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] * q.symbols[(t + i) % kPeriod];
      ++out.checks;
      if (acc % 4 != 0) {
        out.fail(code_id(q) + " violates the degree-11 recursion at t=" + std::to_string(t));
        break;
      }
    }
  }
  for (auto& p : parts) {
    r.checks += p.checks;
    for (auto& ce : p.counterexamples) r.fail(std::move(ce));
  }
  r.summary = std::to_string(fam.quaternary.size()) + " MFD2 codes, register output vs trace generation";
  return r;
}

bool in_corollary_set(GaussInt z) {
  const bool im_ok = z.im == 32 || z.im == -32;
  const bool re_ok = z.re == 32 || z.re == -32 || z.re == 30 || z.re == -34;
  return im_ok && re_ok;
}

ValueScan scan_value_sets(std::uint64_t seed, std::size_t pairs) {
  const auto& fam = mfd2();
  const auto sample = sample_pairs(seed, pairs, fam.quaternary.size());
  std::vector<ValueScan> parts(sample.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < sample.size(); ++k) {
    const QuaternaryCode& a = fam.quaternary[sample[k].first];
    const QuaternaryCode& b = fam.quaternary[sample[k].second];
    const PairArrays ref = reference_arrays(a, b);
    ValueScan& s = parts[k];
    for (int tau = 0; tau < kPeriod; ++tau) {
      if (is_degenerate_shift(tau)) continue;
      const std::string where = std::string(tau % 2 ? " odd-tau" : " even-tau") + " x1=" + std::to_string(a.index.x) +
                                " x2=" + std::to_string(b.index.x) + " ";
      const GaussInt p = ref.phi[tau], d = ref.delta[tau];
      ++s.phi_values;
      ++s.delta_values;
      s.max_phi_norm = std::max(s.max_phi_norm, p.norm());
      s.max_delta_norm = std::max(s.max_delta_norm, d.norm());
      if (!in_corollary_set(p)) {
        ++s.phi_outside;
        ++s.outside["phi" + where + format(p)];
      }
      if (!in_corollary_set(d)) {
        ++s.delta_outside;
        ++s.outside["Delta" + where + format(d)];
      }
    }
  }
  ValueScan total;
  for (const auto& s : parts) {
    total.phi_values += s.phi_values;
    total.delta_values += s.delta_values;
    total.phi_outside += s.phi_outside;
    total.delta_outside += s.delta_outside;
    total.max_phi_norm = std::max(total.max_phi_norm, s.max_phi_norm);
    total.max_delta_norm = std::max(total.max_delta_norm, s.max_delta_norm);
    for (const auto& [k, v] : s.outside) total.outside[k] += v;
  }
  return total;
}

Result value_sets(std::uint64_t seed, std::size_t pairs) {
  const ValueScan s = scan_value_sets(seed, pairs);
  Result r;
  r.name = "value_sets";
  r.checks = s.phi_values + s.delta_values;
  for (const auto& [k, v] : s.outside) r.fail(k + " (" + std::to_string(v) + " times)");
  if (!s.outside.empty()) r.passed = false;
  r.summary = std::to_string(s.phi_outside) + " of " + std::to_string(s.phi_values) + " phi and " +
              std::to_string(s.delta_outside) + " of " + std::to_string(s.delta_values) +
              " Delta values outside {+-32(1+-i), -2+-32(1+-i)}";
  return r;
}

Result bounds(std::uint64_t seed, std::size_t pairs) {
  Result r = over_pairs("bounds", seed, pairs, [](const QuaternaryCode& a, const QuaternaryCode& b, Result& out) {
    const PairArrays ref = reference_arrays(a, b);
    for (int tau = 0; tau < kPeriod; ++tau) {
      if (is_degenerate_shift(tau)) continue;
      out.checks += 2;
      if (ref.phi[tau].norm() > 2180) out.fail("|phi|^2 > 2180 at " + pair_label(a, b, tau));
      if (ref.delta[tau].norm() > 2180) out.fail("|Delta|^2 > 2180 at " + pair_label(a, b, tau));
      for (Phase p1 : {Phase::QP, Phase::IP}) {
        for (Phase p2 : {Phase::QP, Phase::IP}) {
          ++out.checks;
          const std::int64_t rho = binary_from_quaternary(p1, p2, ref.phi[tau], ref.delta[tau]);
          if (rho > 66 || rho < -66) out.fail("|rho| = " + std::to_string(rho) + " > 66 at " + pair_label(a, b, tau));
        }
      }
    }
  });
  r.summary = "|phi|, |Delta| <= sqrt(2180) and |rho| <= 66 at nondegenerate shifts";
  return r;
}

Result accelerated_vs_exact(std::uint64_t seed, std::size_t spot_checks, std::size_t parseval_pairs) {
  Result r;
  r.name = "accelerated_vs_exact";
  const auto& fam = mfd2();
  // Spot checks over MFD2 and over its binary components.
  std::vector<std::vector<std::uint8_t>> pool;
  for (const auto& q : fam.quaternary) pool.push_back(q.symbols);
  for (const auto& q : fam.quaternary) {
    const Components c = components(q);
    pool.push_back(as_z4(c.qp));
    pool.push_back(as_z4(c.ip));
  }
  std::mt19937_64 rng(seed);
  std::vector<GaussInt> fast(kPeriod);
  std::size_t fallbacks = 0;
  for (std::size_t k = 0; k < spot_checks; ++k) {
    const auto& a = pool[rng() % pool.size()];
    const auto& b = pool[rng() % pool.size()];
    const auto kind = static_cast<CorrelationKind>(rng() % 3);
    const int tau = static_cast<int>(rng() % kPeriod);
    kernels::correlate_accelerated(a, b, kind, fast, &fallbacks);
    GaussInt direct;
    switch (kind) {
      case CorrelationKind::even: direct = phi_brute(a, b, tau).value; break;
      case CorrelationKind::odd: direct = odd_corr(a, b, tau).value; break;
      case CorrelationKind::anti: direct = delta_brute(a, b, tau).value; break;
    }
    ++r.checks;
    if (fast[tau] != direct) {
      r.fail("spot " + std::to_string(k) + " tau=" + std::to_string(tau) + " expected " + format(direct) + " got " +
             format(fast[tau]));
    }
  }
  std::vector<GaussInt> exact(kPeriod);
  for (std::size_t k = 0; k < parseval_pairs; ++k) {
    const auto& a = pool[rng() % pool.size()];
    const auto& b = pool[rng() % pool.size()];
    kernels::correlate_reference(a, b, CorrelationKind::even, exact);
    kernels::correlate_accelerated(a, b, CorrelationKind::even, fast, &fallbacks);
    std::int64_t se = 0, sf = 0;
    for (int t = 0; t < kPeriod; ++t) {
      se += exact[t].norm();
      sf += fast[t].norm();
    }
    ++r.checks;
    if (se != sf) r.fail("Parseval pair " + std::to_string(k) + ": exact " + std::to_string(se) + " accelerated " + std::to_string(sf));
  }
  r.summary = std::to_string(spot_checks) + " spot checks, " + std::to_string(parseval_pairs) +
              " Parseval totals, " + std::to_string(fallbacks) + " exact fallbacks";
  return r;
}

}  // namespace z4codes::verify
