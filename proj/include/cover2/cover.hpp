#pragma once

#include <memory>
#include <string>
#include <vector>

#include "forms.hpp"
#include "matrix.hpp"
#include "store.hpp"

namespace cover2 {

struct ConjugacyClass {
  std::size_t representative = 0;  // store index of the minimal encoding in the class
  std::size_t size = 0;
  BigInt order;
  ActionType action;
};

/// Conjugacy classes of a complete ElementStore; class_of maps store indices to classes.
struct ClassTable {
  std::shared_ptr<const ElementStore> store;
  std::vector<ConjugacyClass> classes;
  std::vector<std::uint32_t> class_of;

  std::size_t group_order() const { return store->size(); }
  std::size_t num_classes() const { return classes.size(); }
  Matrix representative(std::size_t c) const { return store->matrix(classes[c].representative); }
};

/// Orbits under conjugation by the store's generators. Classes are numbered in order of their
/// smallest store index; representatives are the lexicographically smallest members.
inline ClassTable conjugacy_classes(std::shared_ptr<const ElementStore> store) {
  const ElementStore& s = *store;
  if (!s.complete()) throw std::invalid_argument("conjugacy_classes: store is not complete");
  if (s.generators().empty() && s.size() > 1) throw std::invalid_argument("conjugacy_classes: store has no generators");
  constexpr std::uint32_t kUnset = 0xFFFFFFFFU;
  ClassTable ct;
  ct.store = store;
  ct.class_of.assign(s.size(), kUnset);
  std::vector<Conjugator> conj;
  for (const auto& g : s.generators()) conj.emplace_back(s.packed_field(), g);

  std::vector<std::size_t> queue;
  std::uint64_t buf[kMaxPackedDim];
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (ct.class_of[i] != kUnset) continue;
    const auto c = static_cast<std::uint32_t>(ct.classes.size());
    ConjugacyClass cls;
    cls.representative = i;
    queue.assign(1, i);
    ct.class_of[i] = c;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t x = queue[head];
      if (s.less(x, cls.representative)) cls.representative = x;
      for (const auto& k : conj) {
        k.apply(s.element(x), buf);
        auto y = s.find(buf);
        if (!y) throw std::logic_error("conjugacy_classes: store is not closed under conjugation");
        if (ct.class_of[*y] == kUnset) {
          ct.class_of[*y] = c;
          queue.push_back(*y);
        }
      }
    }
    cls.size = queue.size();
    Matrix rep = s.matrix(cls.representative);
    cls.order = element_order(rep);
    cls.action = action_type(rep);
    ct.classes.push_back(std::move(cls));
  }
  return ct;
}

inline ClassTable conjugacy_classes(ElementStore store) {
  return conjugacy_classes(std::make_shared<const ElementStore>(std::move(store)));
}

using Fusion = std::vector<bool>;

/// Classes of G meeting the subgroup H.
inline Fusion class_fusion(const ElementStore& h, const ClassTable& ct) {
  if (h.dim() != ct.store->dim()) throw std::invalid_argument("class_fusion: dimension mismatch");
  Fusion f(ct.num_classes(), false);
  for (std::size_t i = 0; i < h.size(); ++i) {
    auto idx = ct.store->find(h.element(i));
    if (!idx) throw std::invalid_argument("class_fusion: H is not a subset of G");
    f[ct.class_of[*idx]] = true;
  }
  return f;
}

inline double fused_fraction(const Fusion& f, const ClassTable& ct) {
  std::size_t n = 0;
  for (std::size_t c = 0; c < f.size(); ++c)
    if (f[c]) n += ct.classes[c].size;
  return double(n) / double(ct.group_order());
}

struct CoverComponent {
  std::string label;
  Fusion fusion;
  std::size_t fused_classes = 0;
  double fused_fraction = 0;
  bool proper = true;
  bool contains_center = true;
};

struct UncoveredClass {
  std::size_t index = 0;
  BigInt order;
  ActionType action;
  std::size_t size = 0;
};

struct CoverReport {
  std::size_t group_order = 0;
  std::size_t num_classes = 0;
  std::vector<CoverComponent> components;
  bool covered = false;
  std::vector<UncoveredClass> uncovered;
  std::vector<std::string> warnings;
};

namespace detail {

inline CoverComponent make_component(const std::string& label, Fusion fusion, const ClassTable& ct,
                                     std::size_t subgroup_order, std::optional<bool> has_center) {
  CoverComponent c;
  c.label = label;
  c.fusion = std::move(fusion);
  for (bool b : c.fusion) c.fused_classes += b;
  c.fused_fraction = fused_fraction(c.fusion, ct);
  c.proper = subgroup_order < ct.group_order();
  c.contains_center = has_center.value_or(true);
  return c;
}

/// Whether every central element of G (class of size one) lies in H.
inline bool contains_center(const ElementStore& h, const ClassTable& ct) {
  for (const auto& cls : ct.classes)
    if (cls.size == 1 && !h.find(ct.store->element(cls.representative))) return false;
  return true;
}

inline CoverReport report_from(std::vector<CoverComponent> comps, const ClassTable& ct) {
  CoverReport r;
  r.group_order = ct.group_order();
  r.num_classes = ct.num_classes();
  for (std::size_t c = 0; c < ct.num_classes(); ++c) {
    bool hit = false;
    for (const auto& comp : comps) hit = hit || comp.fusion[c];
    if (!hit) r.uncovered.push_back({c, ct.classes[c].order, ct.classes[c].action, ct.classes[c].size});
  }
  r.covered = r.uncovered.empty();
  for (const auto& comp : comps) {
    if (!comp.proper) r.warnings.push_back(comp.label + " is not a proper subgroup");
    if (!comp.contains_center) r.warnings.push_back(comp.label + " does not contain Z(G), so it is not maximal");
    if (comp.proper && comp.fused_classes == ct.num_classes())
      r.warnings.push_back(comp.label + " alone meets every class (impossible for a proper subgroup)");
  }
  r.components = std::move(comps);
  return r;
}

}  // namespace detail

/// Decides whether {H, K} is a 2-covering of G.
inline CoverReport is_2_covering(const ClassTable& ct, const ElementStore& h, const ElementStore& k,
                                 const std::string& h_label = "H", const std::string& k_label = "K") {
  std::vector<CoverComponent> comps;
  comps.push_back(detail::make_component(h_label, class_fusion(h, ct), ct, h.size(), detail::contains_center(h, ct)));
  comps.push_back(detail::make_component(k_label, class_fusion(k, ct), ct, k.size(), detail::contains_center(k, ct)));
  return detail::report_from(std::move(comps), ct);
}

struct DyeClassTypes {
  bool plus = false;
  bool minus = false;
};

struct DyeReport {
  std::vector<DyeClassTypes> types;  // per class
  CoverReport cover;                 // components "O+" and "O-" with form-derived fusion
};

/// Dye's covering of Sp_{2n}(q), q even, decided per class: a class meets [O^e] iff its
/// representative preserves some type-e quadratic form polarizing to the fixed alternating form.
inline DyeReport dye_check_by_forms(const ClassTable& ct, const Matrix& polarization) {
  if (ct.store->field()->p() != 2) throw std::invalid_argument("dye_check_by_forms: q must be even");
  DyeReport r;
  Fusion plus(ct.num_classes()), minus(ct.num_classes());
  for (std::size_t c = 0; c < ct.num_classes(); ++c) {
    auto [p, m] = invariant_quadratic_types(ct.representative(c), polarization);
    r.types.push_back({p, m});
    plus[c] = p;
    minus[c] = m;
  }
  std::vector<CoverComponent> comps;
  comps.push_back(detail::make_component("O+", std::move(plus), ct, 0, std::nullopt));
  comps.push_back(detail::make_component("O-", std::move(minus), ct, 0, std::nullopt));
  r.cover = detail::report_from(std::move(comps), ct);
  return r;
}

struct CoveringPair {
  std::size_t first = 0, second = 0;
  double first_fraction = 0, second_fraction = 0;
  bool improper = false;
};

/// All unordered pairs of distinct candidates whose fusions cover every class.
inline std::vector<CoveringPair> find_2_coverings(const ClassTable& ct, const std::vector<const ElementStore*>& candidates) {
  std::vector<Fusion> fus;
  for (const auto* h : candidates) fus.push_back(class_fusion(*h, ct));
  std::vector<CoveringPair> out;
  for (std::size_t i = 0; i < fus.size(); ++i)
    for (std::size_t j = i + 1; j < fus.size(); ++j) {
      bool all = true;
      for (std::size_t c = 0; c < ct.num_classes() && all; ++c) all = fus[i][c] || fus[j][c];
      if (!all) continue;
      out.push_back({i, j, fused_fraction(fus[i], ct), fused_fraction(fus[j], ct),
                     candidates[i]->size() == ct.group_order() || candidates[j]->size() == ct.group_order()});
    }
  return out;
}

}  // namespace cover2
