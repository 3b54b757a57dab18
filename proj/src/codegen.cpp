#include "z4codes/codegen.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <unordered_set>

namespace z4codes {

std::string to_string(Phase p) { return p == Phase::QP ? "QP" : "IP"; }

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::D: return "D";
    case FamilyKind::MFD2: return "MFD2";
    case FamilyKind::IZ4_2: return "IZ4_2";
    case FamilyKind::IZ4_2S: return "IZ4_2S";
    case FamilyKind::External: return "External";
  }
  return "?";
}

FamilyKind parse_family_kind(const std::string& s) {
  for (auto k : {FamilyKind::D, FamilyKind::MFD2, FamilyKind::IZ4_2, FamilyKind::IZ4_2S, FamilyKind::External}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown family kind '" + s + "'");
}

const std::vector<FieldElement>& index_set_J() {
  static const std::vector<FieldElement> J = [] {
    std::vector<FieldElement> out;
    std::unordered_set<FieldElement> members;
    for (std::uint16_t h = 0; h < 256; ++h) {
      out.push_back(gf2m::from_dual_coords(h));
      members.insert(out.back());
    }
    const FieldElement th = gf2m::theta();
    for (auto y : out) {
      if (members.count(y + gf2m::kOne) || members.count(y + th) || members.count(y + th + gf2m::kOne)) {
        throw std::logic_error("index set J is not closed against +1, +theta, +theta+1");
      }
    }
    return out;
  }();
  return J;
}

const std::vector<FieldElement>& index_set_H() {
  static const std::vector<FieldElement> H = [] {
    std::vector<FieldElement> out;
    std::unordered_set<FieldElement> members;
    const FieldElement th = gf2m::theta();
    for (std::uint16_t h = 0; h < 1024; ++h) {
      const FieldElement y = gf2m::from_dual_coords(h);
      if (members.count(y + th)) continue;
      members.insert(y);
      out.push_back(y);
    }
    return out;
  }();
  return H;
}

gr4m::RingElement beta() {
  return gr4m::kNu * (gr4m::kRingOne + gr4m::teichmuller_lift(gf2m::theta()).twice());
}

QuaternaryCode gen_quaternary(const CodeIndex& idx) {
  if (idx.x > 1) throw std::invalid_argument("gen_quaternary: x must be 0 or 1");
  QuaternaryCode q{idx, std::vector<std::uint8_t>(kPeriod)};
  const gr4m::RingElement b = beta();
  gr4m::RingElement term = gr4m::kRingOne + gr4m::teichmuller_lift(idx.y).twice();
  for (int t = 0; t < kPeriod; ++t) {
    const int three_pow = (t % 2 == 0) ? 1 : 3;
    q.symbols[t] = static_cast<std::uint8_t>((idx.x * three_pow + gr4m::ring_trace(term)) % 4);
    term = term * b;
  }
  return q;
}

Components components(const QuaternaryCode& q) {
  Components c;
  c.qp = BinaryCode{q.index, Phase::QP, std::vector<std::uint8_t>(q.symbols.size()), {}};
  c.ip = BinaryCode{q.index, Phase::IP, std::vector<std::uint8_t>(q.symbols.size()), {}};
  for (std::size_t t = 0; t < q.symbols.size(); ++t) {
    const std::uint8_t u = q.symbols[t] & 1U;
    const std::uint8_t v = (q.symbols[t] >> 1) & 1U;
    c.qp.bits[t] = v;
    c.ip.bits[t] = u ^ v;
  }
  return c;
}

namespace {

std::vector<QuaternaryCode> quaternary_family(const std::vector<FieldElement>& ys) {
  std::vector<QuaternaryCode> out(2 * ys.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = gen_quaternary(CodeIndex{static_cast<std::uint8_t>(i / ys.size()), ys[i % ys.size()]});
  }
  return out;
}

FamilyMetadata base_metadata(const char* index_set) {
  FamilyMetadata m;
  m.theta_log = gf2m::discrete_log(gf2m::theta());
  m.index_set = index_set;
  m.ordering = "phase(QP,IP) > x ascending > y by trace-dual coordinate integer";
  return m;
}

}  // namespace

FamilySet build_family(FamilyKind kind) {
  FamilySet fam;
  fam.kind = kind;
  switch (kind) {
    case FamilyKind::D:
      fam.metadata = base_metadata("H = {y : h9 = 0} over the trace-dual basis (greedy maximal, y+theta excluded)");
      fam.quaternary = quaternary_family(index_set_H());
      break;
    case FamilyKind::MFD2:
      fam.metadata = base_metadata("J = {y : h8 = h9 = 0} over the trace-dual basis");
      fam.quaternary = quaternary_family(index_set_J());
      break;
    case FamilyKind::IZ4_2: {
      fam.metadata = base_metadata("J = {y : h8 = h9 = 0} over the trace-dual basis");
      const auto parents = quaternary_family(index_set_J());
      fam.binary.resize(2 * parents.size());
      for (std::size_t i = 0; i < parents.size(); ++i) {
        auto c = components(parents[i]);
        fam.binary[i] = std::move(c.qp);
        fam.binary[parents.size() + i] = std::move(c.ip);
      }
      break;
    }
    default:
      throw std::invalid_argument("build_family: unsupported kind " + to_string(kind));
  }
  return fam;
}

int balance(const BinaryCode& c) {
  int ones = 0;
  for (auto b : c.bits) ones += b;
  return static_cast<int>(c.bits.size()) - 2 * ones;
}

std::array<int, 4> quaternary_balance(const QuaternaryCode& q) {
  std::array<int, 4> counts{};
  for (auto s : q.symbols) ++counts[s & 3U];
  return counts;
}

std::size_t least_rotation(const std::vector<std::uint8_t>& s) {
  // Booth's algorithm over the doubled string.
  const std::size_t n = s.size();
  if (n == 0) return 0;
  std::vector<long> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const std::uint8_t sj = s[j % n];
    long i = f[j - k - 1];
    while (i != -1 && sj != s[(k + i + 1) % n]) {
      if (sj < s[(k + i + 1) % n]) k = j - i - 1;
      i = f[i];
    }
    if (sj != s[(k + i + 1) % n]) {
      if (sj < s[k % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k % n;
}

FamilySet select_balanced_subset(const FamilySet& fam, int threshold) {
  if (fam.kind != FamilyKind::IZ4_2) throw std::invalid_argument("select_balanced_subset: expects an IZ4_2 family");
  FamilySet out;
  out.kind = FamilyKind::IZ4_2S;
  out.metadata = fam.metadata;
  out.metadata.balance_threshold = threshold;
  std::unordered_set<std::string> seen;
  for (const auto& c : fam.binary) {
    if (std::abs(balance(c)) > threshold) continue;
    const std::size_t r = least_rotation(c.bits);
    std::string canonical(c.bits.size(), '\0');
    for (std::size_t t = 0; t < c.bits.size(); ++t) canonical[t] = static_cast<char>(c.bits[(r + t) % c.bits.size()]);
    if (!seen.insert(std::move(canonical)).second) continue;
    out.binary.push_back(c);
  }
  return out;
}

std::string code_id(const QuaternaryCode& q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "Q-%u-%03u", q.index.x, gf2m::dual_coords(q.index.y));
  return buf;
}

std::string code_id(const BinaryCode& b) {
  if (!b.id.empty()) return b.id;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s-%u-%03u", to_string(b.phase).c_str(), b.index.x, gf2m::dual_coords(b.index.y));
  return buf;
}

}  // namespace z4codes
