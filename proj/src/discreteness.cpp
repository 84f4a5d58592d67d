#include "ptorus/discreteness.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "ptorus/errors.hpp"

namespace ptorus {

namespace {

Complex& at(TraceTriple& t, Slot s) {
  switch (s) {
    case Slot::X: return t.x;
    case Slot::Y: return t.y;
    default: return t.z;
  }
}

Complex at(const TraceTriple& t, Slot s) {
  switch (s) {
    case Slot::X: return t.x;
    case Slot::Y: return t.y;
    default: return t.z;
  }
}

// The two coordinates kept when `s` is exchanged.
std::pair<Complex, Complex> retained(const TraceTriple& t, Slot s) {
  switch (s) {
    case Slot::X: return {t.y, t.z};
    case Slot::Y: return {t.x, t.z};
    default: return {t.x, t.y};
  }
}

Complex exchanged(const TraceTriple& t, Slot s) {
  const auto [p, q] = retained(t, s);
  return p * q - at(t, s);
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Chain around a kept coordinate y with |y| < 2: the values x_k met while
// exchanging the other two coordinates obey x_{k+1} = y x_k − x_{k−1}, so
// x_k = A ω^k + B ω^{−k} with ω + 1/ω = y. With |ω| > 1 the bound
// |x_k| ≥ |A||ω|^k − |B||ω|^{−k} is non-decreasing in k; once it clears 2 + δ
// at k = 0 every later chain value and every side branch stays outside |t| < 2.
bool chain_escapes(Complex y, Complex current, Complex next, double delta) {
  const Complex r = std::sqrt(y * y - 4.0);
  Complex omega = 0.5 * (y + r);
  if (std::abs(omega) < 1.0) omega = 1.0 / omega;
  const Complex gap = omega - 1.0 / omega;
  if (std::abs(omega) - 1.0 < 1e-9 || std::abs(gap) < 1e-12) return false;
  const Complex a = (next - current / omega) / gap;
  const Complex b = current - a;
  return std::abs(a) - std::abs(b) >= 2.0 + delta;
}

// Whether the subtree behind the edge (parent, slot) → child can be skipped:
// every trace in it provably has modulus ≥ 2, so no elliptic certificate hides there.
bool edge_escapes(const TraceTriple& parent, Slot slot, Complex fresh, double delta) {
  const auto [p, q] = retained(parent, slot);
  const double mp = std::abs(p);
  const double mq = std::abs(q);
  if (mp >= 2.0 && mq >= 2.0) return std::abs(fresh) >= std::abs(at(parent, slot));
  if (mp < 2.0 && mq >= 2.0) return chain_escapes(p, q, fresh, delta);
  if (mq < 2.0 && mp >= 2.0) return chain_escapes(q, p, fresh, delta);
  return false;
}

struct Node {
  TraceTriple triple;
  std::int32_t parent;
  std::int32_t depth;
  Slot via;
};

std::vector<Slot> path_to(const std::vector<Node>& nodes, std::int32_t idx) {
  std::vector<Slot> tail;
  while (idx > 0) {
    tail.push_back(nodes[static_cast<std::size_t>(idx)].via);
    idx = nodes[static_cast<std::size_t>(idx)].parent;
  }
  return {tail.rbegin(), tail.rend()};
}

std::optional<Complex> certificate_in(const TraceTriple& t, double tau) {
  for (Complex c : {t.x, t.y, t.z}) {
    if (is_elliptic_certificate(c, tau)) return c;
  }
  return std::nullopt;
}

}  // namespace

VerdictCode code_of(const Verdict& v) {
  if (std::holds_alternative<ExteriorCertified>(v)) return VerdictCode::ExteriorCertified;
  if (const auto* likely = std::get_if<ExteriorLikely>(&v)) {
    return likely->flagged ? VerdictCode::Error : VerdictCode::ExteriorLikely;
  }
  return VerdictCode::PresumedMember;
}

std::string_view name_of(VerdictCode c) {
  switch (c) {
    case VerdictCode::PresumedMember: return "member";
    case VerdictCode::ExteriorLikely: return "likely";
    case VerdictCode::ExteriorCertified: return "certified";
    default: return "error";
  }
}

TraceTriple neighbor(const TraceTriple& t, Slot slot) {
  TraceTriple out = t;
  at(out, slot) = exchanged(t, slot);
  return out;
}

bool is_elliptic_certificate(Complex t, double tau) {
  return std::abs(t.imag()) <= tau && t.real() > -2.0 + tau && t.real() < 2.0 - tau;
}

Verdict scan(const TraceTriple& start, const ScanParams& p) {
  if (!finite(start.x) || !finite(start.y) || !finite(start.z)) return ExteriorLikely{0, true};
  if (auto c = certificate_in(start, p.tau_real)) return ExteriorCertified{start, *c, {}};

  thread_local std::vector<Node> nodes;
  nodes.clear();
  nodes.push_back({start, -1, 0, Slot::X});
  std::size_t level_begin = 0;
  std::size_t level_end = 1;

  for (int depth = 0; depth < p.max_depth; ++depth) {
    for (std::size_t i = level_begin; i < level_end; ++i) {
      const Node parent = nodes[i];
      for (Slot s : {Slot::X, Slot::Y, Slot::Z}) {
        if (i != 0 && s == parent.via) continue;
        const Complex fresh = exchanged(parent.triple, s);
        if (!finite(fresh)) continue;
        TraceTriple child = parent.triple;
        at(child, s) = fresh;
        if (is_elliptic_certificate(fresh, p.tau_real)) {
          nodes.push_back({child, static_cast<std::int32_t>(i), depth + 1, s});
          return ExteriorCertified{child, fresh,
                                   path_to(nodes, static_cast<std::int32_t>(nodes.size() - 1))};
        }
        if (p.prune) {
          if (std::abs(fresh) > p.trace_cap) continue;
          if (edge_escapes(parent.triple, s, fresh, p.delta)) continue;
        }
        nodes.push_back({child, static_cast<std::int32_t>(i), depth + 1, s});
      }
    }
    level_begin = level_end;
    level_end = nodes.size();
    if (level_begin == level_end) return PresumedMember{depth + 1};
    if (nodes.size() > p.max_nodes) return ExteriorLikely{level_end - level_begin, false};
  }
  return ExteriorLikely{level_end - level_begin, false};
}

Verdict membership_trace(Complex alpha, Complex beta, const ScanParams& p) {
  try {
    const Complex gamma = gamma_branch({alpha, beta});
    return scan({alpha, beta, gamma}, p);
  } catch (const DomainError&) {
  } catch (const BranchError&) {
  }
  return ExteriorLikely{0, true};
}

Verdict membership_maskit(Complex mu, const ScanParams& p) {
  const Complex alpha = -kI * mu;
  return scan({alpha, Complex{2.0, 0.0}, alpha - 2.0 * kI}, p);
}

Verdict membership_fn(Complex lambda, Complex tau, const ScanParams& p) {
  try {
    if (!FNCoords{lambda, tau}.valid()) return ExteriorLikely{0, true};
    return scan(eta({lambda, tau}).traces(), p);
  } catch (const DegenerateError&) {
  }
  return ExteriorLikely{0, true};
}

}  // namespace ptorus
