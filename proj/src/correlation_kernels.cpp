#include "z4codes/correlation_kernels.hpp"

#include <fftw3.h>
#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace z4codes::kernels {
namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

// Packed code plus a doubled copy so any rotation can be read word by word.
struct Prepared {
  PackedZ4 plain;
  std::vector<std::uint64_t> dlo, dhi;
};

Prepared prepare(Z4Span z4) {
  Prepared p;
  p.plain = pack(z4);
  const std::size_t n = z4.size();
  const std::size_t w2 = words_for(2 * n) + 2;
  p.dlo.assign(w2, 0);
  p.dhi.assign(w2, 0);
  for (std::size_t t = 0; t < 2 * n; ++t) {
    const std::uint8_t s = z4[t % n];
    p.dlo[t / 64] |= static_cast<std::uint64_t>(s & 1U) << (t % 64);
    p.dhi[t / 64] |= static_cast<std::uint64_t>((s >> 1) & 1U) << (t % 64);
  }
  return p;
}

inline std::uint64_t extract(const std::vector<std::uint64_t>& d, std::size_t start) {
  const std::size_t q = start / 64;
  const unsigned r = start % 64;
  if (r == 0) return d[q];
  return (d[q] >> r) | (d[q + 1] << (64 - r));
}

struct Counts {
  std::int64_t a = 0, b = 0, c = 0;
  void add(std::uint64_t lo, std::uint64_t hi) {
    a += std::popcount(lo);
    b += std::popcount(lo & hi);
    c += std::popcount(~lo & hi);
  }
  GaussInt value(std::int64_t n) const { return {n - a - 2 * c, a - 2 * b}; }
};

// full[tau] = sum over all t; odd[tau] = prefix - wrapped part. Either may be null.
void exact_kernel(const Prepared& a, const PackedZ4& b, bool anti, GaussInt* full, GaussInt* odd) {
  const std::size_t n = b.length;
  const std::size_t w = words_for(n);
  const unsigned tail = n % 64;
  const std::uint64_t last_mask = tail ? (~0ULL >> (64 - tail)) : ~0ULL;
  for (std::size_t tau = 0; tau < n; ++tau) {
    Counts all, prefix;
    const std::size_t p = n - tau;
    const std::size_t pw = p / 64;
    const unsigned pbits = p % 64;
    for (std::size_t k = 0; k < w; ++k) {
      const std::uint64_t mask = (k + 1 == w) ? last_mask : ~0ULL;
      const std::uint64_t al = extract(a.dlo, tau + 64 * k) & mask;
      const std::uint64_t ah = extract(a.dhi, tau + 64 * k) & mask;
      const std::uint64_t bl = b.lo[k], bh = b.hi[k];
      const std::uint64_t lo = al ^ bl;
      const std::uint64_t hi = anti ? (ah ^ bh ^ (al & bl)) : (ah ^ bh ^ (bl & ~al));
      all.add(lo, hi);
      if (odd) {
        if (k < pw) {
          prefix.add(lo, hi);
        } else if (k == pw && pbits) {
          const std::uint64_t m = ~0ULL >> (64 - pbits);
          prefix.add(lo & m, hi & m);
        }
      }
    }
    const GaussInt f = all.value(static_cast<std::int64_t>(n));
    if (full) full[tau] = f;
    if (odd) odd[tau] = 2 * prefix.value(static_cast<std::int64_t>(p)) - f;
  }
}

void check_pair(Z4Span a, Z4Span b, std::size_t out_size) {
  if (a.size() != b.size()) throw std::invalid_argument("correlate: sequence lengths differ");
  if (out_size < a.size()) throw std::invalid_argument("correlate: output span too short");
}

// ---- FFT plumbing ----

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftBuffer make_buffer(std::size_t m) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m));
  if (!p) throw std::bad_alloc();
  return FftBuffer(p);
}

struct Plans {
  fftw_plan forward;
  fftw_plan backward;
};

std::mutex g_plan_mutex;

const Plans& plans_for(std::size_t m) {
  static std::map<std::size_t, Plans> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  FftBuffer in = make_buffer(m), out = make_buffer(m);
  Plans p;
  const int len = static_cast<int>(m);
  p.forward = fftw_plan_dft_1d(len, in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
  p.backward = fftw_plan_dft_1d(len, in.get(), out.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
  return cache.emplace(m, p).first->second;
}

std::size_t transform_length(std::size_t n) { return std::bit_ceil(2 * n); }

constexpr double kRe[4] = {1.0, 0.0, -1.0, 0.0};
constexpr double kIm[4] = {0.0, 1.0, 0.0, -1.0};

// Spectrum of i^s(t) (or its conjugate) zero padded to m.
FftBuffer spectrum(Z4Span s, std::size_t m, bool conjugate) {
  FftBuffer in = make_buffer(m), out = make_buffer(m);
  for (std::size_t t = 0; t < m; ++t) {
    if (t < s.size()) {
      in[t][0] = kRe[s[t] & 3U];
      in[t][1] = conjugate ? -kIm[s[t] & 3U] : kIm[s[t] & 3U];
    } else {
      in[t][0] = in[t][1] = 0.0;
    }
  }
  fftw_execute_dft(plans_for(m).forward, in.get(), out.get());
  return out;
}

struct Scratch {
  FftBuffer prod, lin;
  explicit Scratch(std::size_t m) : prod(make_buffer(m)), lin(make_buffer(m)) {}
};

// Linear correlation c(k) = sum_t a(t+k) conj(b(t)) from the spectra, then
// fold the two lags into even (+) or odd (-) values. Returns the worst residual.
double fold_from_spectra(const fftw_complex* sa, const fftw_complex* sb, std::size_t n, std::size_t m,
                         Scratch& scratch, GaussInt* even, GaussInt* odd) {
  for (std::size_t k = 0; k < m; ++k) {
    const double ar = sa[k][0], ai = sa[k][1], br = sb[k][0], bi = -sb[k][1];
    scratch.prod[k][0] = ar * br - ai * bi;
    scratch.prod[k][1] = ar * bi + ai * br;
  }
  fftw_execute_dft(plans_for(m).backward, scratch.prod.get(), scratch.lin.get());
  const double scale = 1.0 / static_cast<double>(m);
  double worst = 0.0;
  auto settle = [&worst](double x) {
    const double r = std::nearbyint(x);
    worst = std::max(worst, std::abs(x - r));
    return static_cast<std::int64_t>(r);
  };
  for (std::size_t tau = 0; tau < n; ++tau) {
    const double cr = scratch.lin[tau][0] * scale, ci = scratch.lin[tau][1] * scale;
    double wr = 0.0, wi = 0.0;
    if (tau > 0) {
      wr = scratch.lin[m - (n - tau)][0] * scale;
      wi = scratch.lin[m - (n - tau)][1] * scale;
    }
    if (even) even[tau] = {settle(cr + wr), settle(ci + wi)};
    if (odd) odd[tau] = {settle(cr - wr), settle(ci - wi)};
  }
  return worst;
}

int resolve_threads(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

}  // namespace

PackedZ4 pack(Z4Span z4) {
  PackedZ4 p;
  p.length = z4.size();
  p.lo.assign(words_for(z4.size()), 0);
  p.hi.assign(words_for(z4.size()), 0);
  for (std::size_t t = 0; t < z4.size(); ++t) {
    p.lo[t / 64] |= static_cast<std::uint64_t>(z4[t] & 1U) << (t % 64);
    p.hi[t / 64] |= static_cast<std::uint64_t>((z4[t] >> 1) & 1U) << (t % 64);
  }
  return p;
}

void correlate_reference(Z4Span a, Z4Span b, CorrelationKind kind, std::span<GaussInt> out) {
  check_pair(a, b, out.size());
  for (std::size_t tau = 0; tau < a.size(); ++tau) {
    const int t = static_cast<int>(tau);
    switch (kind) {
      case CorrelationKind::even: out[tau] = phi_brute(a, b, t).value; break;
      case CorrelationKind::odd: out[tau] = odd_corr(a, b, t).value; break;
      case CorrelationKind::anti: out[tau] = delta_brute(a, b, t).value; break;
    }
  }
}

void correlate_exact(Z4Span a, Z4Span b, CorrelationKind kind, std::span<GaussInt> out) {
  check_pair(a, b, out.size());
  const Prepared pa = prepare(a);
  const PackedZ4 pb = pack(b);
  if (kind == CorrelationKind::odd) {
    exact_kernel(pa, pb, false, nullptr, out.data());
  } else {
    exact_kernel(pa, pb, kind == CorrelationKind::anti, out.data(), nullptr);
  }
}

double correlate_accelerated(Z4Span a, Z4Span b, CorrelationKind kind, std::span<GaussInt> out,
                             std::size_t* fallbacks) {
  check_pair(a, b, out.size());
  const std::size_t n = a.size();
  const std::size_t m = transform_length(n);
  const FftBuffer sa = spectrum(a, m, false);
  const FftBuffer sb = spectrum(b, m, kind == CorrelationKind::anti);
  Scratch scratch(m);
  const double worst = fold_from_spectra(sa.get(), sb.get(), n, m, scratch,
                                         kind == CorrelationKind::odd ? nullptr : out.data(),
                                         kind == CorrelationKind::odd ? out.data() : nullptr);
  if (worst > kRoundingTolerance) {
    correlate_exact(a, b, kind, out);
    if (fallbacks) ++*fallbacks;
  }
  return worst;
}

std::vector<std::vector<std::uint8_t>> z4_sequences(const FamilySet& fam) {
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(fam.size());
  if (fam.is_binary()) {
    for (const auto& b : fam.binary) out.push_back(as_z4(b));
  } else {
    for (const auto& q : fam.quaternary) out.push_back(q.symbols);
  }
  return out;
}

BulkReport bulk_correlate(const FamilySet& fam, std::span<const CorrelationKind> kinds, Mode mode, const Sink& sink,
                          const BulkOptions& options) {
  return bulk_correlate(z4_sequences(fam), kinds, mode, sink, options);
}

BulkReport bulk_correlate(const std::vector<std::vector<std::uint8_t>>& codes, std::span<const CorrelationKind> kinds,
                          Mode mode, const Sink& sink, const BulkOptions& options) {
  BulkReport report;
  if (codes.empty() || kinds.empty()) return report;
  const std::size_t n = codes.front().size();
  for (const auto& c : codes) {
    if (c.size() != n) throw std::invalid_argument("bulk_correlate: codes differ in length");
  }
  const std::size_t k_count = codes.size();
  const std::size_t nk = kinds.size();
  const bool want_even = std::find(kinds.begin(), kinds.end(), CorrelationKind::even) != kinds.end();
  const bool want_odd = std::find(kinds.begin(), kinds.end(), CorrelationKind::odd) != kinds.end();
  const bool want_anti = std::find(kinds.begin(), kinds.end(), CorrelationKind::anti) != kinds.end();
  const int threads = resolve_threads(options.threads);

  std::vector<Prepared> prepared;
  std::vector<PackedZ4> packed(k_count);
  std::vector<FftBuffer> spectra, conj_spectra;
  const std::size_t m = transform_length(n);
  if (mode == Mode::exact) prepared.resize(k_count);
  if (mode == Mode::accelerated) {
    spectra.resize(k_count);
    if (want_anti) conj_spectra.resize(k_count);
    plans_for(m);
  }
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t i = 0; i < k_count; ++i) {
    packed[i] = pack(codes[i]);
    if (mode == Mode::exact) prepared[i] = prepare(codes[i]);
    if (mode == Mode::accelerated) {
      spectra[i] = spectrum(codes[i], m, false);
      if (want_anti) conj_spectra[i] = spectrum(codes[i], m, true);
    }
  }

  auto slot_of = [&kinds](CorrelationKind k) {
    return static_cast<std::size_t>(std::find(kinds.begin(), kinds.end(), k) - kinds.begin());
  };
  const std::size_t even_slot = slot_of(CorrelationKind::even);
  const std::size_t odd_slot = slot_of(CorrelationKind::odd);
  const std::size_t anti_slot = slot_of(CorrelationKind::anti);

  std::vector<GaussInt> row;
  std::vector<std::size_t> partners;
  for (std::size_t a = 0; a < k_count; ++a) {
    partners.clear();
    if (options.include_auto) partners.push_back(a);
    if (options.include_cross) {
      for (std::size_t b = a + 1; b < k_count; ++b) partners.push_back(b);
    }
    if (partners.empty()) continue;
    row.assign(partners.size() * nk * n, GaussInt{});
    std::size_t row_fallbacks = 0;
    double row_residual = 0.0;

#pragma omp parallel num_threads(threads) reduction(+ : row_fallbacks) reduction(max : row_residual)
    {
      std::unique_ptr<Scratch> scratch;
      if (mode == Mode::accelerated) scratch = std::make_unique<Scratch>(m);
#pragma omp for schedule(dynamic)
      for (std::size_t j = 0; j < partners.size(); ++j) {
        const std::size_t b = partners[j];
        GaussInt* base = row.data() + j * nk * n;
        GaussInt* even = want_even ? base + even_slot * n : nullptr;
        GaussInt* odd = want_odd ? base + odd_slot * n : nullptr;
        GaussInt* anti = want_anti ? base + anti_slot * n : nullptr;
        if (mode == Mode::exact) {
          if (even || odd) exact_kernel(prepared[a], packed[b], false, even, odd);
          if (anti) exact_kernel(prepared[a], packed[b], true, anti, nullptr);
          continue;
        }
        if (even || odd) {
          const double r = fold_from_spectra(spectra[a].get(), spectra[b].get(), n, m, *scratch, even, odd);
          row_residual = std::max(row_residual, r);
          if (r > kRoundingTolerance) {
            const Prepared pa = prepare(codes[a]);
            exact_kernel(pa, packed[b], false, even, odd);
            ++row_fallbacks;
          }
        }
        if (anti) {
          const double r = fold_from_spectra(spectra[a].get(), conj_spectra[b].get(), n, m, *scratch, anti, nullptr);
          row_residual = std::max(row_residual, r);
          if (r > kRoundingTolerance) {
            const Prepared pa = prepare(codes[a]);
            exact_kernel(pa, packed[b], true, anti, nullptr);
            ++row_fallbacks;
          }
        }
      }
    }

    report.fallbacks += row_fallbacks;
    report.max_residual = std::max(report.max_residual, row_residual);
    for (std::size_t j = 0; j < partners.size(); ++j) {
      for (std::size_t s = 0; s < nk; ++s) {
        const GaussInt* vals = row.data() + (j * nk + s) * n;
        sink(PairCorrelation{a, partners[j], kinds[s], std::span<const GaussInt>(vals, n)});
      }
      ++report.pairs;
    }
  }
  return report;
}

}  // namespace z4codes::kernels
