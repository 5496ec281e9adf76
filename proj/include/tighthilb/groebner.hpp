#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "tighthilb/monomial.hpp"
#include "tighthilb/polynomial.hpp"

namespace tighthilb {

namespace detail {

/// Divisor lookup over a fixed set of monic polynomials.
class Reducer {
 public:
  Reducer() = default;

  void add(const Polynomial* g) {
    polys_.push_back(g);
    masks_.push_back(g->lead_monomial().support_mask());
  }

  void clear() {
    polys_.clear();
    masks_.clear();
  }

  std::size_t size() const noexcept { return polys_.size(); }

  const Polynomial* find_divisor(const Monomial& m, const Polynomial* skip = nullptr) const noexcept {
    const std::uint32_t mask = m.support_mask();
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      if ((masks_[i] & ~mask) != 0 || polys_[i] == skip) continue;
      if (polys_[i]->lead_monomial().divides(m)) return polys_[i];
    }
    return nullptr;
  }

  /// Full reduction: no term of the result is divisible by a leading monomial.
  Polynomial normal_form(const Polynomial& f, const Polynomial* skip = nullptr) const {
    if (f.is_zero() || polys_.empty()) return f;
    const auto& k = f.ring()->field();
    const auto& order = f.ring()->order();
    std::vector<Term> work(f.terms().begin(), f.terms().end());
    std::size_t pos = 0;
    std::vector<Term> remainder;
    std::vector<Term> merged;
    while (pos < work.size()) {
      const Term lead = work[pos];
      const Polynomial* g = find_divisor(lead.monomial, skip);
      if (g == nullptr) {
        remainder.push_back(lead);
        ++pos;
        continue;
      }
      // work[pos..] - (lead.coeff / lc(g)) * (lead / lm(g)) * g, skipping the cancelled lead.
      const Coeff c = k.neg(k.div(lead.coeff, g->lead_coeff()));
      const Monomial shift = lead.monomial.quotient(g->lead_monomial());
      auto gt = g->terms();
      merged.clear();
      merged.reserve(work.size() - pos + gt.size());
      std::size_t i = pos + 1, j = 1;
      while (i < work.size() || j < gt.size()) {
        if (j == gt.size()) {
          merged.push_back(work[i++]);
          continue;
        }
        Monomial gm = gt[j].monomial * shift;
        int cmp = i == work.size() ? -1 : order.compare(work[i].monomial, gm);
        if (cmp > 0) {
          merged.push_back(work[i++]);
        } else if (cmp < 0) {
          merged.push_back({k.mul(gt[j].coeff, c), gm});
          ++j;
        } else {
          Coeff v = k.add(work[i].coeff, k.mul(gt[j].coeff, c));
          if (v != 0) merged.push_back({v, gm});
          ++i;
          ++j;
        }
      }
      work.swap(merged);
      pos = 0;
    }
    return Polynomial::from_terms(f.ring(), std::move(remainder));
  }

 private:
  std::vector<const Polynomial*> polys_;
  std::vector<std::uint32_t> masks_;
};

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const Monomial l = f.lead_monomial().lcm(g.lead_monomial());
  const auto& k = f.ring()->field();
  Polynomial a = f.mul_term(k.inv(f.lead_coeff()), l.quotient(f.lead_monomial()));
  Polynomial b = g.mul_term(k.inv(g.lead_coeff()), l.quotient(g.lead_monomial()));
  return a - b;
}

}  // namespace detail

/// Reduced Gröbner basis: monic generators sorted by ascending leading
/// monomial. Two bases of the same ideal under the same order are equal.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;

  const RingPtr& ring() const noexcept { return ring_; }
  std::span<const Polynomial> generators() const noexcept { return gens_; }
  std::size_t size() const noexcept { return gens_.size(); }
  bool is_zero_ideal() const noexcept { return gens_.empty(); }
  bool is_unit() const noexcept { return gens_.size() == 1 && gens_.front().is_constant(); }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    out.reserve(gens_.size());
    for (const auto& g : gens_) out.push_back(g.lead_monomial());
    return out;
  }

  Polynomial normal_form(const Polynomial& f) const {
    check_ring(f);
    return reducer_.normal_form(f);
  }

  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }

  /// Ideal inclusion other ⊆ this.
  bool contains(const GroebnerBasis& other) const {
    for (const auto& g : other.gens_) {
      if (!contains(g)) return false;
    }
    return true;
  }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    if (a.ring_ && b.ring_ && !a.ring_->compatible(*b.ring_)) return false;
    return a.gens_ == b.gens_;
  }

  GroebnerBasis(const GroebnerBasis& other) : ring_(other.ring_), gens_(other.gens_) { rebuild(); }
  GroebnerBasis(GroebnerBasis&& other) noexcept : ring_(std::move(other.ring_)), gens_(std::move(other.gens_)) {
    rebuild();
  }
  GroebnerBasis& operator=(GroebnerBasis other) noexcept {
    ring_ = std::move(other.ring_);
    gens_ = std::move(other.gens_);
    rebuild();
    return *this;
  }

  friend GroebnerBasis buchberger(const RingPtr& ring, std::span<const Polynomial> gens);

 private:
  GroebnerBasis(RingPtr ring, std::vector<Polynomial> gens) : ring_(std::move(ring)), gens_(std::move(gens)) {
    rebuild();
  }

  void rebuild() noexcept {
    reducer_.clear();
    for (const auto& g : gens_) reducer_.add(&g);
  }

  void check_ring(const Polynomial& f) const {
    if (!f.ring() || !ring_ || !f.ring()->compatible(*ring_)) {
      throw Error(ErrorCode::ArityError, "polynomial and basis live in different rings");
    }
  }

  RingPtr ring_;
  std::vector<Polynomial> gens_;
  detail::Reducer reducer_;
};

/// Buchberger's algorithm with the Gebauer–Möller installation of the
/// product and chain criteria and the normal selection strategy.
inline GroebnerBasis buchberger(const RingPtr& ring, std::span<const Polynomial> gens) {
  const auto& order = ring->order();
  std::vector<Polynomial> store;
  store.reserve(gens.size() * 2 + 8);
  std::vector<std::size_t> basis;  // indices into store; current minimal G

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  // Min-heap on (degree of lcm, order of lcm, then insertion for determinism).
  auto later = [&](const Pair& a, const Pair& b) {
    if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() > b.lcm.degree();
    if (int c = order.compare(a.lcm, b.lcm); c != 0) return c > 0;
    if (a.j != b.j) return a.j > b.j;
    return a.i > b.i;
  };
  std::vector<Pair> pairs;

  detail::Reducer reducer;
  auto rebuild_reducer = [&] {
    reducer.clear();
    for (std::size_t idx : basis) reducer.add(&store[idx]);
  };

  bool unit = false;
  auto install = [&](Polynomial h) {
    if (h.is_constant()) {
      unit = true;
      return;
    }
    store.push_back(std::move(h));
    const std::size_t hi = store.size() - 1;
    const Monomial& lh = store[hi].lead_monomial();

    struct Candidate {
      std::size_t g;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Candidate> cands;
    cands.reserve(basis.size());
    for (std::size_t g : basis) {
      const Monomial& lg = store[g].lead_monomial();
      cands.push_back({g, lh.lcm(lg), lh.coprime(lg)});
    }
    std::vector<Candidate> kept;
    for (std::size_t a = 0; a < cands.size(); ++a) {
      bool keep = cands[a].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < cands.size() && keep; ++b) {
          if (cands[b].lcm.divides(cands[a].lcm)) keep = false;
        }
        for (const auto& d : kept) {
          if (!keep) break;
          if (d.lcm.divides(cands[a].lcm)) keep = false;
        }
      }
      if (keep) kept.push_back(cands[a]);
    }
    std::vector<Pair> next;
    next.reserve(pairs.size() + kept.size());
    for (const Pair& pr : pairs) {
      bool drop = lh.divides(pr.lcm) && !(store[pr.i].lead_monomial().lcm(lh) == pr.lcm) &&
                  !(lh.lcm(store[pr.j].lead_monomial()) == pr.lcm);
      if (!drop) next.push_back(pr);
    }
    for (const auto& c : kept) {
      if (!c.coprime) next.push_back({c.g, hi, c.lcm});
    }
    pairs.swap(next);
    std::make_heap(pairs.begin(), pairs.end(), later);

    std::vector<std::size_t> next_basis;
    for (std::size_t g : basis) {
      if (!lh.divides(store[g].lead_monomial())) next_basis.push_back(g);
    }
    next_basis.push_back(hi);
    basis.swap(next_basis);
    rebuild_reducer();
  };

  // Seed with the input, smallest leading monomials first.
  std::vector<Polynomial> input;
  for (const auto& f : gens) {
    if (!f.ring()->compatible(*ring)) throw Error(ErrorCode::ArityError, "generator from a different ring");
    if (!f.is_zero()) input.push_back(f.monic());
  }
  std::sort(input.begin(), input.end(),
            [&](const Polynomial& a, const Polynomial& b) { return order.less(a.lead_monomial(), b.lead_monomial()); });
  for (auto& f : input) {
    Polynomial h = reducer.normal_form(f);
    if (h.is_zero()) continue;
    install(h.monic());
    if (unit) break;
  }

  while (!unit && !pairs.empty()) {
    std::pop_heap(pairs.begin(), pairs.end(), later);
    Pair pr = pairs.back();
    pairs.pop_back();
    Polynomial h = reducer.normal_form(detail::s_polynomial(store[pr.i], store[pr.j]));
    if (h.is_zero()) continue;
    install(h.monic());
  }

  if (unit) return GroebnerBasis(ring, {Polynomial::constant(ring, 1)});

  std::vector<Polynomial> result;
  result.reserve(basis.size());
  for (std::size_t idx : basis) result.push_back(store[idx]);
  std::sort(result.begin(), result.end(),
            [&](const Polynomial& a, const Polynomial& b) { return order.less(a.lead_monomial(), b.lead_monomial()); });
  // Tail-reduce each element against the others (all leading monomials stay).
  detail::Reducer full;
  for (const auto& g : result) full.add(&g);
  std::vector<Polynomial> reduced;
  reduced.reserve(result.size());
  for (const auto& g : result) {
    Polynomial tail = g - Polynomial::monomial(ring, g.lead_coeff(), g.lead_monomial());
    Polynomial lead = Polynomial::monomial(ring, 1, g.lead_monomial());
    reduced.push_back(lead + full.normal_form(tail, &g));
  }
  return GroebnerBasis(ring, std::move(reduced));
}

inline GroebnerBasis buchberger(const RingPtr& ring, std::initializer_list<Polynomial> gens) {
  return buchberger(ring, std::span<const Polynomial>(gens.begin(), gens.size()));
}

inline GroebnerBasis buchberger(const std::vector<Polynomial>& gens) {
  if (gens.empty()) throw Error(ErrorCode::DomainError, "cannot infer the ring of an empty generator list");
  return buchberger(gens.front().ring(), std::span<const Polynomial>(gens));
}

inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& g) { return g.normal_form(f); }

}  // namespace tighthilb
