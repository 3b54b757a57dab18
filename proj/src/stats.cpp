#include "z4codes/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace z4codes::stats {

double to_db(double magnitude, std::size_t length) {
  if (length == 0) throw std::invalid_argument("to_db: length must be positive");
  if (magnitude < 0) throw std::invalid_argument("to_db: negative magnitude");
  if (magnitude == 0) return -std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(magnitude / static_cast<double>(length));
}

void MagnitudeHistogram::add(std::uint64_t norm, std::uint64_t weight) {
  if (norm < kDense) {
    dense_[norm] += weight;
  } else {
    sparse_[norm] += weight;
  }
  total_ += weight;
  sum_norm_ += norm * weight;
  max_norm_ = std::max(max_norm_, norm);
}

void MagnitudeHistogram::merge(const MagnitudeHistogram& other) {
  for (std::uint64_t k = 0; k < kDense; ++k) dense_[k] += other.dense_[k];
  for (const auto& [k, c] : other.sparse_) sparse_[k] += c;
  total_ += other.total_;
  sum_norm_ += other.sum_norm_;
  max_norm_ = std::max(max_norm_, other.max_norm_);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> MagnitudeHistogram::entries() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  const std::uint64_t dense_end = std::min<std::uint64_t>(max_norm_ + 1, kDense);
  for (std::uint64_t k = 0; k < dense_end; ++k) {
    if (dense_[k]) out.emplace_back(k, dense_[k]);
  }
  for (const auto& e : sparse_) out.push_back(e);
  return out;
}

std::uint64_t MagnitudeHistogram::norm_at_rank(std::uint64_t rank) const {
  if (rank == 0 || rank > total_) throw std::out_of_range("norm_at_rank: rank outside 1..total");
  std::uint64_t seen = 0;
  for (const auto& [norm, count] : entries()) {
    seen += count;
    if (seen >= rank) return norm;
  }
  return max_norm_;
}

std::uint64_t MagnitudeHistogram::percentile_norm(double p) const {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("percentile_norm: p must be in (0, 1]");
  if (total_ == 0) throw std::logic_error("percentile_norm: empty histogram");
  // Nearest rank; the small epsilon keeps 0.99 * 100 from landing on 100.0000001.
  const auto rank = static_cast<std::uint64_t>(std::ceil(p * static_cast<double>(total_) - 1e-9));
  return norm_at_rank(std::max<std::uint64_t>(rank, 1));
}

std::uint64_t MagnitudeHistogram::count_at_most(std::uint64_t norm) const {
  std::uint64_t c = 0;
  for (const auto& [k, n] : entries()) {
    if (k > norm) break;
    c += n;
  }
  return c;
}

double Extreme::magnitude() const { return std::sqrt(static_cast<double>(norm)); }

namespace {

Distribution summarize(const MagnitudeHistogram& h) {
  Distribution d;
  if (h.empty()) return d;
  d.count = h.total();
  d.rms_magnitude = std::sqrt(static_cast<double>(h.sum_norm()) / static_cast<double>(h.total()));
  d.p99_norm = h.percentile_norm(0.99);
  d.p999_norm = h.percentile_norm(0.999);
  d.max_norm = h.max_norm();
  return d;
}

void consider(std::optional<Extreme>& slot, std::uint64_t norm, std::size_t a, std::size_t b, int tau) {
  if (!slot || norm > slot->norm) slot = Extreme{norm, a, b, tau};
}

double mag(std::uint64_t norm) { return std::sqrt(static_cast<double>(norm)); }

}  // namespace

FamilyProfile family_profile(const FamilySet& fam, const ProfileOptions& options) {
  if (fam.size() == 0) throw std::invalid_argument("family_profile: empty family");
  const auto start = std::chrono::steady_clock::now();
  FamilyProfile p;
  p.family_size = fam.size();
  p.include_odd = options.include_odd;
  const auto codes = kernels::z4_sequences(fam);
  p.length = codes.front().size();

  std::vector<CorrelationKind> kinds{CorrelationKind::even};
  if (options.include_odd) kinds.push_back(CorrelationKind::odd);

  auto sink = [&p](const kernels::PairCorrelation& pc) {
    const bool is_auto = pc.first == pc.second;
    const bool odd = pc.kind == CorrelationKind::odd;
    std::optional<Extreme>& slot = is_auto ? (odd ? p.odd_acr : p.even_acr) : (odd ? p.odd_ccr : p.even_ccr);
    const std::uint64_t weight = is_auto ? 1 : 2;
    for (std::size_t tau = is_auto ? 1 : 0; tau < pc.values.size(); ++tau) {
      const auto norm = static_cast<std::uint64_t>(pc.values[tau].norm());
      p.histogram.add(norm, weight);
      if (!is_auto) p.cross_histogram.add(norm, weight);
      consider(slot, norm, pc.first, pc.second, static_cast<int>(tau));
    }
  };
  kernels::BulkOptions bo;
  bo.threads = options.threads;
  p.bulk = kernels::bulk_correlate(codes, kinds, options.mode, sink, bo);

  for (const auto* e : {&p.even_acr, &p.even_ccr, &p.odd_acr, &p.odd_ccr}) {
    if (*e && (*e)->norm > p.max_all.norm) p.max_all = **e;
  }
  p.all = summarize(p.histogram);
  p.cross_only = summarize(p.cross_histogram);
  if (fam.is_binary()) {
    for (const auto& b : fam.binary) ++p.balance_histogram[balance(b)];
  }
  p.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return p;
}

double cdf_percent_at(const MagnitudeHistogram& h, double magnitude) {
  if (h.empty()) throw std::logic_error("cdf_percent_at: empty histogram");
  if (magnitude < 0) return 0.0;
  const auto limit = static_cast<std::uint64_t>(std::floor(magnitude * magnitude + 1e-9));
  return 100.0 * static_cast<double>(h.count_at_most(limit)) / static_cast<double>(h.total());
}

std::vector<CdfPoint> cdf_points(const MagnitudeHistogram& h) {
  std::vector<CdfPoint> out;
  if (h.empty()) return out;
  std::uint64_t seen = 0;
  for (const auto& [norm, count] : h.entries()) {
    seen += count;
    out.push_back({mag(norm), 100.0 * static_cast<double>(seen) / static_cast<double>(h.total())});
  }
  out.back().percent = 100.0;
  return out;
}

std::vector<CdfPoint> cdf_points(const std::vector<double>& magnitudes) {
  if (magnitudes.empty()) throw std::invalid_argument("cdf_points: empty input");
  std::vector<double> sorted = magnitudes;
  std::sort(sorted.begin(), sorted.end());
  std::vector<CdfPoint> out;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    out.push_back({sorted[i], 100.0 * static_cast<double>(i + 1) / n});
  }
  out.back().percent = 100.0;
  return out;
}

std::int64_t paired_orthogonality(const BinaryCode& pilot, const BinaryCode& data) {
  if (pilot.bits.size() != 10230 || data.bits.size() != 2046) {
    throw std::invalid_argument("paired_orthogonality: expects a 10230-chip pilot and a 2046-chip data code");
  }
  std::int64_t sum = 0;
  for (std::size_t t = 0; t < pilot.bits.size(); ++t) sum += ((pilot.bits[t] ^ data.bits[t / 5]) & 1U) ? -1 : 1;
  return sum;
}

FamilySet screen_odd_correlation(const FamilySet& fam, int magnitude, kernels::Mode mode, int threads) {
  if (magnitude < 0) throw std::invalid_argument("screen_odd_correlation: negative magnitude");
  const std::size_t k = fam.size();
  const auto limit = static_cast<std::uint64_t>(magnitude) * static_cast<std::uint64_t>(magnitude);
  std::vector<std::uint64_t> worst(k * k, 0);
  const CorrelationKind kinds[] = {CorrelationKind::odd};
  auto sink = [&](const kernels::PairCorrelation& pc) {
    std::uint64_t m = 0;
    for (std::size_t tau = pc.first == pc.second ? 1 : 0; tau < pc.values.size(); ++tau) {
      m = std::max<std::uint64_t>(m, pc.values[tau].norm());
    }
    worst[pc.first * k + pc.second] = worst[pc.second * k + pc.first] = m;
  };
  kernels::BulkOptions bo;
  bo.threads = threads;
  kernels::bulk_correlate(fam, kinds, mode, sink, bo);

  std::vector<bool> keep(k, true);
  for (std::size_t i = 0; i < k; ++i) keep[i] = worst[i * k + i] <= limit;
  for (;;) {
    std::size_t victim = k, most = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!keep[i]) continue;
      std::size_t v = 0;
      for (std::size_t j = 0; j < k; ++j) v += (j != i && keep[j] && worst[i * k + j] > limit);
      if (v > most) most = v, victim = i;
    }
    if (victim == k) break;
    keep[victim] = false;
  }

  FamilySet out;
  out.kind = fam.kind;
  out.metadata = fam.metadata;
  out.metadata.odd_screen_magnitude = magnitude;
  for (std::size_t i = 0; i < k; ++i) {
    if (!keep[i]) continue;
    if (fam.is_binary()) {
      out.binary.push_back(fam.binary[i]);
    } else {
      out.quaternary.push_back(fam.quaternary[i]);
    }
  }
  return out;
}

namespace {

nlohmann::json extreme_json(const Extreme& e, std::size_t n) {
  return {{"norm", e.norm}, {"magnitude", e.magnitude()}, {"db", to_db(e.magnitude(), n)},
          {"first", e.first}, {"second", e.second}, {"tau", e.tau}};
}

nlohmann::json distribution_json(const Distribution& d, std::size_t n) {
  return {{"count", d.count},
          {"rms_magnitude", d.rms_magnitude},
          {"rms_db", to_db(d.rms_magnitude, n)},
          {"p99_magnitude", mag(d.p99_norm)},
          {"p99_norm", d.p99_norm},
          {"p99_db", to_db(mag(d.p99_norm), n)},
          {"p999_magnitude", mag(d.p999_norm)},
          {"p999_norm", d.p999_norm},
          {"p999_db", to_db(mag(d.p999_norm), n)},
          {"max_magnitude", mag(d.max_norm)},
          {"max_db", to_db(mag(d.max_norm), n)}};
}

}  // namespace

nlohmann::json to_json(const FamilyProfile& p) {
  nlohmann::json j;
  j["family_size"] = p.family_size;
  j["length"] = p.length;
  j["include_odd"] = p.include_odd;
  const std::pair<const char*, const std::optional<Extreme>*> cats[] = {
      {"even_acr", &p.even_acr}, {"even_ccr", &p.even_ccr}, {"odd_acr", &p.odd_acr}, {"odd_ccr", &p.odd_ccr}};
  for (const auto& [name, e] : cats) {
    if (*e) j["categories"][name] = extreme_json(**e, p.length);
  }
  j["max_all"] = extreme_json(p.max_all, p.length);
  j["distribution"]["all"] = distribution_json(p.all, p.length);
  if (p.cross_only.count) j["distribution"]["cross_only"] = distribution_json(p.cross_only, p.length);
  if (!p.histogram.empty()) j["cdf_percent_at_80"] = cdf_percent_at(p.histogram, 80.0);
  nlohmann::json cdf = nlohmann::json::array();
  for (const auto& pt : cdf_points(p.histogram)) cdf.push_back({pt.magnitude, pt.percent});
  j["cdf"] = cdf;
  nlohmann::json bal = nlohmann::json::object();
  for (const auto& [b, c] : p.balance_histogram) bal[std::to_string(b)] = c;
  j["balance_histogram"] = bal;
  j["engine"] = {{"pairs", p.bulk.pairs}, {"fallbacks", p.bulk.fallbacks}, {"max_residual", p.bulk.max_residual}};
  j["seconds"] = p.seconds;
  return j;
}

std::string cdf_csv(const MagnitudeHistogram& h) {
  std::ostringstream os;
  os << "magnitude,percent\n";
  os.precision(10);
  for (const auto& pt : cdf_points(h)) os << pt.magnitude << ',' << pt.percent << '\n';
  return os.str();
}

}  // namespace z4codes::stats
