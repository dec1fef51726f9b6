#pragma once

#include <array>
#include <cstring>
#include <functional>
#include <optional>
#include <vector>

#include "matrix.hpp"

namespace cover2 {

inline constexpr unsigned kMaxPackedDim = 8;
inline constexpr std::size_t kDefaultEnumerationCap = 20'000'000;

/// Byte-level field tables for packed rows: row = d bytes (entry j in byte j) in one uint64.
class PackedField {
 public:
  explicit PackedField(FieldPtr F) : F_(std::move(F)), q_(F_->q()) {
    if (q_ > 256) throw std::invalid_argument("PackedField: field too large for byte packing");
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b) {
        add_[a * q_ + b] = static_cast<std::uint8_t>(F_->add(a, b));
        mul_[a * q_ + b] = static_cast<std::uint8_t>(F_->mul(a, b));
      }
  }

  const FieldPtr& field() const { return F_; }
  std::uint32_t q() const { return q_; }
  bool char2() const { return F_->p() == 2; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b, unsigned d) const {
    if (char2()) return a ^ b;
    std::uint64_t r = 0;
    for (unsigned j = 0; j < d; ++j) {
      std::uint64_t x = (a >> (8 * j)) & 0xFF, y = (b >> (8 * j)) & 0xFF;
      r |= std::uint64_t(add_[x * q_ + y]) << (8 * j);
    }
    return r;
  }

  std::uint64_t scale(std::uint32_t c, std::uint64_t a, unsigned d) const {
    if (c == 1) return a;
    std::uint64_t r = 0;
    for (unsigned j = 0; j < d; ++j) {
      std::uint64_t x = (a >> (8 * j)) & 0xFF;
      r |= std::uint64_t(mul_[c * q_ + x]) << (8 * j);
    }
    return r;
  }

 private:
  FieldPtr F_;
  std::uint32_t q_;
  std::vector<std::uint8_t> add_, mul_;
};

using PackedRows = std::array<std::uint64_t, kMaxPackedDim>;

inline PackedRows pack(const Matrix& m) {
  if (m.dim() > kMaxPackedDim) throw std::invalid_argument("pack: dimension exceeds 8");
  PackedRows r{};
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r[i] |= std::uint64_t(m(i, j)) << (8 * j);
  return r;
}

inline Matrix unpack(const FieldPtr& F, unsigned d, const std::uint64_t* rows) {
  Matrix m(F, d);
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) m(i, j) = static_cast<Elem>((rows[i] >> (8 * j)) & 0xFF);
  return m;
}

/// x -> x * g for a fixed g, via precomputed scaled rows of g.
class RightMultiplier {
 public:
  RightMultiplier(const PackedField& pf, const Matrix& g) : pf_(&pf), d_(static_cast<unsigned>(g.dim())) {
    const PackedRows gr = pack(g);
    table_.resize(std::size_t(d_) * pf.q());
    for (unsigned k = 0; k < d_; ++k)
      for (Elem c = 0; c < pf.q(); ++c) table_[k * pf.q() + c] = pf.scale(c, gr[k], d_) & row_mask();
  }

  void apply(const std::uint64_t* x, std::uint64_t* out) const {
    const std::uint32_t q = pf_->q();
    for (unsigned i = 0; i < d_; ++i) {
      std::uint64_t acc = 0, row = x[i];
      for (unsigned k = 0; k < d_; ++k, row >>= 8) {
        const std::uint32_t c = row & 0xFF;
        if (c) acc = pf_->add(acc, table_[k * q + c], d_);
      }
      out[i] = acc;
    }
  }

 private:
  std::uint64_t row_mask() const { return d_ == 8 ? ~0ULL : ((1ULL << (8 * d_)) - 1); }
  const PackedField* pf_;
  unsigned d_;
  std::vector<std::uint64_t> table_;
};

/// x -> L * x for a fixed L.
class LeftMultiplier {
 public:
  LeftMultiplier(const PackedField& pf, const Matrix& l) : pf_(&pf), d_(static_cast<unsigned>(l.dim())), l_(l.data()) {}

  void apply(const std::uint64_t* x, std::uint64_t* out) const {
    for (unsigned i = 0; i < d_; ++i) {
      std::uint64_t acc = 0;
      for (unsigned k = 0; k < d_; ++k) {
        const Elem c = l_[i * d_ + k];
        if (c) acc = pf_->add(acc, pf_->scale(c, x[k], d_), d_);
      }
      out[i] = acc;
    }
  }

 private:
  const PackedField* pf_;
  unsigned d_;
  std::vector<Elem> l_;
};

/// x -> g^-1 x g.
class Conjugator {
 public:
  Conjugator(const PackedField& pf, const Matrix& g) : right_(pf, g), left_(pf, g.inverse()) {}
  void apply(const std::uint64_t* x, std::uint64_t* out) const {
    std::uint64_t tmp[kMaxPackedDim];
    right_.apply(x, tmp);
    left_.apply(tmp, out);
  }

 private:
  RightMultiplier right_;
  LeftMultiplier left_;
};

/// Deduplicated set of d x d matrices (d <= 8, q <= 256) in discovery order,
/// indexed by an open-addressing hash table over the packed rows.
class ElementStore {
 public:
  static constexpr std::uint32_t kEmpty = 0xFFFFFFFFU;

  ElementStore(FieldPtr F, unsigned d) : pf_(std::make_shared<PackedField>(F)), d_(d) {
    if (d < 1 || d > kMaxPackedDim) throw std::invalid_argument("ElementStore: dimension must be in 1..8");
    table_.assign(1024, kEmpty);
  }

  const FieldPtr& field() const { return pf_->field(); }
  const PackedField& packed_field() const { return *pf_; }
  unsigned dim() const { return d_; }
  std::size_t size() const { return rows_.size() / d_; }
  bool complete() const { return complete_; }
  void set_complete(bool c) { complete_ = c; }
  const std::vector<Matrix>& generators() const { return gens_; }
  void set_generators(std::vector<Matrix> g) { gens_ = std::move(g); }

  const std::uint64_t* element(std::size_t i) const { return rows_.data() + i * d_; }
  Matrix matrix(std::size_t i) const { return unpack(field(), d_, element(i)); }

  std::optional<std::size_t> find(const std::uint64_t* x) const {
    std::size_t h = hash(x) & (table_.size() - 1);
    while (true) {
      const std::uint32_t idx = table_[h];
      if (idx == kEmpty) return std::nullopt;
      if (std::memcmp(element(idx), x, d_ * sizeof(std::uint64_t)) == 0) return idx;
      h = (h + 1) & (table_.size() - 1);
    }
  }
  std::optional<std::size_t> find(const Matrix& m) const {
    auto p = pack(m);
    return find(p.data());
  }
  bool contains(const Matrix& m) const { return find(m).has_value(); }

  /// Returns (index, inserted).
  std::pair<std::size_t, bool> insert(const std::uint64_t* x) {
    if ((size() + 1) * 2 > table_.size()) grow();
    std::size_t h = hash(x) & (table_.size() - 1);
    while (true) {
      const std::uint32_t idx = table_[h];
      if (idx == kEmpty) break;
      if (std::memcmp(element(idx), x, d_ * sizeof(std::uint64_t)) == 0) return {idx, false};
      h = (h + 1) & (table_.size() - 1);
    }
    const std::size_t idx = size();
    table_[h] = static_cast<std::uint32_t>(idx);
    rows_.insert(rows_.end(), x, x + d_);
    return {idx, true};
  }
  std::pair<std::size_t, bool> insert(const Matrix& m) {
    auto p = pack(m);
    return insert(p.data());
  }

  /// Lexicographic comparison of the row-major entry sequences.
  bool less(std::size_t a, std::size_t b) const { return compare(element(a), element(b)) < 0; }
  int compare(const std::uint64_t* a, const std::uint64_t* b) const {
    for (unsigned i = 0; i < d_; ++i)
      if (a[i] != b[i]) {
        for (unsigned j = 0; j < 8; ++j) {
          auto x = (a[i] >> (8 * j)) & 0xFF, y = (b[i] >> (8 * j)) & 0xFF;
          if (x != y) return x < y ? -1 : 1;
        }
      }
    return 0;
  }

 private:
  std::uint64_t hash(const std::uint64_t* x) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (unsigned i = 0; i < d_; ++i) {
      h ^= x[i] + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
      h *= 0xBF58476D1CE4E5B9ULL;
    }
    h ^= h >> 31;
    return h;
  }

  void grow() {
    std::vector<std::uint32_t> t(table_.size() * 2, kEmpty);
    table_.swap(t);
    for (std::size_t idx = 0; idx < size(); ++idx) {
      std::size_t h = hash(element(idx)) & (table_.size() - 1);
      while (table_[h] != kEmpty) h = (h + 1) & (table_.size() - 1);
      table_[h] = static_cast<std::uint32_t>(idx);
    }
  }

  std::shared_ptr<PackedField> pf_;
  unsigned d_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint32_t> table_;
  std::vector<Matrix> gens_;
  bool complete_ = false;
};

namespace detail {

/// BFS from `start` (elements with index >= start are unprocessed for all generators;
/// elements below start are unprocessed only for generators with index >= first_new_gen).
inline bool close_store(ElementStore& s, std::size_t start, std::size_t first_new_gen, std::size_t cap) {
  std::vector<RightMultiplier> mults;
  for (const auto& g : s.generators()) mults.emplace_back(s.packed_field(), g);
  std::uint64_t buf[kMaxPackedDim];
  for (std::size_t i = 0; i < start; ++i)
    for (std::size_t gi = first_new_gen; gi < mults.size(); ++gi) {
      mults[gi].apply(s.element(i), buf);
      if (s.insert(buf).second && s.size() > cap) return false;
    }
  for (std::size_t i = start; i < s.size(); ++i)
    for (const auto& m : mults) {
      m.apply(s.element(i), buf);
      if (s.insert(buf).second && s.size() > cap) return false;
    }
  return true;
}

}  // namespace detail

/// Closure of the generators under right multiplication, starting from the identity.
/// When the cap is exceeded the store is returned with complete() == false.
inline ElementStore enumerate(const std::vector<Matrix>& gens, std::size_t cap = kDefaultEnumerationCap) {
  if (gens.empty()) throw std::invalid_argument("enumerate: no generators");
  const FieldPtr& F = gens[0].field();
  const unsigned d = static_cast<unsigned>(gens[0].dim());
  for (const auto& g : gens) {
    if (g.field() != F || g.dim() != d) throw std::invalid_argument("enumerate: generators must share field and dimension");
    if (!g.invertible()) throw std::invalid_argument("enumerate: singular generator");
  }
  ElementStore s(F, d);
  s.set_generators(gens);
  s.insert(Matrix::identity(F, d));
  s.set_complete(detail::close_store(s, 0, 0, cap));
  return s;
}

/// Adds a generator to a complete store and re-closes incrementally.
inline void extend(ElementStore& s, const Matrix& g, std::size_t cap = kDefaultEnumerationCap) {
  if (!s.complete()) throw std::logic_error("extend: store is not complete");
  auto gens = s.generators();
  gens.push_back(g);
  s.set_generators(gens);
  const std::size_t old = s.size();
  s.set_complete(detail::close_store(s, old, gens.size() - 1, cap));
}

/// Elements of `s` satisfying the predicate, as a new (complete, if s is) store.
template <class Pred>
ElementStore filter(const ElementStore& s, Pred&& keep) {
  ElementStore out(s.field(), s.dim());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (keep(s.matrix(i))) out.insert(s.element(i));
  out.set_complete(s.complete());
  return out;
}

/// Dickson invariant rank(g - 1) mod 2 (characteristic 2); 0 exactly on Omega.
inline unsigned dickson_invariant(const Matrix& g) {
  return static_cast<unsigned>((g - Matrix::identity(g.field(), g.dim())).rank() % 2);
}

}  // namespace cover2
