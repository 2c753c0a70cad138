#include "powergenus/isomorphism.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "powergenus/error.hpp"

namespace pg {

namespace {

using Fingerprint = std::tuple<std::size_t, std::size_t, std::size_t>;

std::vector<Fingerprint> fingerprints(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> roots(n, 0);
  for (Element y = 0; y < n; ++y) ++roots[g.mul(y, y)];
  std::vector<Fingerprint> out(n);
  for (Element x = 0; x < n; ++x)
    out[x] = {element_order(g, x), conjugacy_class(g, x).size(), roots[x]};
  return out;
}

struct Matcher {
  const FiniteGroup& a;
  const FiniteGroup& b;
  std::vector<Fingerprint> fa, fb;
  std::vector<Element> gens;
  std::vector<std::vector<Element>> candidates;  // per generator

  Matcher(const FiniteGroup& a_, const FiniteGroup& b_)
      : a(a_), b(b_), fa(fingerprints(a_)), fb(fingerprints(b_)) {}

  bool invariants_match() const {
    auto sa = fa, sb = fb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
  }

  void prepare() {
    gens = small_generating_set(a);
    for (Element g : gens) {
      std::vector<Element> c;
      for (Element y = 0; y < b.order(); ++y)
        if (fb[y] == fa[g]) c.push_back(y);
      candidates.push_back(std::move(c));
    }
  }

  // Extends the map over <gens[0..k]> given images; false on conflict.
  bool close(const std::vector<Element>& images, std::size_t k, std::vector<Element>& phi) const {
    const Element unset = static_cast<Element>(-1);
    phi.assign(a.order(), unset);
    std::vector<bool> used(b.order(), false);
    phi[0] = 0;
    used[0] = true;
    std::vector<Element> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      Element x = queue[qi];
      for (std::size_t j = 0; j <= k; ++j) {
        Element y = a.mul(x, gens[j]);
        Element img = b.mul(phi[x], images[j]);
        if (phi[y] == unset) {
          if (used[img]) return false;
          phi[y] = img;
          used[img] = true;
          queue.push_back(y);
        } else if (phi[y] != img) {
          return false;
        }
      }
    }
    return true;
  }

  // Calls visit(phi) for each isomorphism; stops when visit returns false.
  void enumerate(const std::function<bool(const std::vector<Element>&)>& visit) const {
    std::vector<Element> images(gens.size());
    std::vector<Element> phi;
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (stop) return;
      if (k == gens.size()) {
        if (!close(images, k - 1, phi)) return;
        for (Element v : phi)
          if (v == static_cast<Element>(-1)) return;
        if (!visit(phi)) stop = true;
        return;
      }
      for (Element c : candidates[k]) {
        images[k] = c;
        std::vector<Element> partial;
        if (!close(images, k, partial)) continue;
        rec(k + 1);
        if (stop) return;
      }
    };
    if (gens.empty()) {
      // Trivial group.
      phi.assign(1, 0);
      visit(phi);
      return;
    }
    rec(0);
  }
};

}  // namespace

std::vector<Element> small_generating_set(const FiniteGroup& g) {
  const auto fp = fingerprints(g);
  std::map<Fingerprint, std::size_t> freq;
  for (const auto& f : fp) ++freq[f];
  std::vector<Element> order(g.order());
  for (Element x = 0; x < g.order(); ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(), [&](Element x, Element y) {
    if (freq[fp[x]] != freq[fp[y]]) return freq[fp[x]] < freq[fp[y]];
    return std::get<0>(fp[x]) > std::get<0>(fp[y]);
  });
  std::vector<Element> gens;
  std::vector<Element> current{0};
  for (Element x : order) {
    if (current.size() == g.order()) break;
    if (std::binary_search(current.begin(), current.end(), x)) continue;
    gens.push_back(x);
    current = generated_subgroup(g, gens).members;
  }
  return gens;
}

std::optional<std::vector<Element>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                                                     std::size_t cap) {
  if (a.order() > cap || b.order() > cap)
    throw OrderCapExceeded("isomorphism search is limited to order " + std::to_string(cap));
  if (a.order() != b.order()) return std::nullopt;
  Matcher m(a, b);
  if (!m.invariants_match()) return std::nullopt;
  m.prepare();
  std::optional<std::vector<Element>> found;
  m.enumerate([&](const std::vector<Element>& phi) {
    found = phi;
    return false;
  });
  return found;
}

bool is_isomorphic(const FiniteGroup& a, const FiniteGroup& b, std::size_t cap) {
  return find_isomorphism(a, b, cap).has_value();
}

std::vector<std::vector<Element>> automorphisms(const FiniteGroup& g, std::size_t cap) {
  if (g.order() > cap)
    throw OrderCapExceeded("automorphism search is limited to order " + std::to_string(cap));
  Matcher m(g, g);
  m.prepare();
  std::vector<std::vector<Element>> out;
  m.enumerate([&](const std::vector<Element>& phi) {
    out.push_back(phi);
    return true;
  });
  // Identity first.
  auto is_id = [](const std::vector<Element>& phi) {
    for (Element x = 0; x < phi.size(); ++x)
      if (phi[x] != x) return false;
    return true;
  };
  auto it = std::find_if(out.begin(), out.end(), is_id);
  if (it != out.end()) std::rotate(out.begin(), it, it + 1);
  return out;
}

}  // namespace pg
