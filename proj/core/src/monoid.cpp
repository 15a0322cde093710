//
// gcat - exact computation with finite categories and group actions
//

#include "gcat/monoid.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace gcat {

  FinMonoid FinMonoid::make(std::vector<std::string> elements,
                            std::vector<int>         table,
                            int                      unit) {
    std::size_t n = elements.size();
    if (n == 0) {
      throw Error(ErrorKind::malformed_input, "a monoid has at least a unit");
    }
    if (table.size() != n * n) {
      throw Error(ErrorKind::malformed_input,
                  "multiplication table has " + std::to_string(table.size())
                      + " entries, expected " + std::to_string(n * n));
    }
    for (int v : table) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw Error(ErrorKind::dangling_reference,
                    "multiplication table entry out of range");
      }
    }
    if (unit < 0 || static_cast<std::size_t>(unit) >= n) {
      throw Error(ErrorKind::dangling_reference, "unit out of range");
    }
    {
      std::set<std::string> seen(elements.begin(), elements.end());
      if (seen.size() != n) {
        throw Error(ErrorKind::malformed_input, "duplicate element names");
      }
    }
    FinMonoid m;
    m._names = std::move(elements);
    m._table = std::move(table);
    m._unit  = unit;
    for (std::size_t a = 0; a < n; ++a) {
      if (m.mul(unit, a) != static_cast<int>(a)
          || m.mul(a, unit) != static_cast<int>(a)) {
        throw Error(ErrorKind::identity_violation,
                    "unit law fails for '" + m._names[a] + "'");
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c))) {
            throw Error(ErrorKind::associativity_violation,
                        "(" + m._names[a] + ", " + m._names[b] + ", "
                            + m._names[c] + ")");
          }
        }
      }
    }
    return m;
  }

  std::optional<int> FinMonoid::find(std::string_view name) const {
    for (std::size_t a = 0; a < size(); ++a) {
      if (_names[a] == name) {
        return static_cast<int>(a);
      }
    }
    return std::nullopt;
  }

  int FinMonoid::inverse(int a) const {
    for (std::size_t b = 0; b < size(); ++b) {
      if (mul(a, b) == _unit && mul(b, a) == _unit) {
        return static_cast<int>(b);
      }
    }
    return -1;
  }

  bool FinMonoid::is_group() const {
    for (std::size_t a = 0; a < size(); ++a) {
      if (inverse(a) < 0) {
        return false;
      }
    }
    return true;
  }

  void require_group(FinMonoid const& g) {
    for (std::size_t a = 0; a < g.size(); ++a) {
      if (g.inverse(a) < 0) {
        throw Error(ErrorKind::malformed_input,
                    "element '" + g.name(a) + "' has no inverse");
      }
    }
  }

  MonoidPtr trivial_group() {
    return cyclic_group(1);
  }

  MonoidPtr cyclic_group(int n) {
    std::vector<std::string> names;
    std::vector<int>         t;
    for (int a = 0; a < n; ++a) {
      names.push_back(std::to_string(a));
      for (int b = 0; b < n; ++b) {
        t.push_back((a + b) % n);
      }
    }
    return std::make_shared<FinMonoid const>(
        FinMonoid::make(std::move(names), std::move(t), 0));
  }

  MonoidPtr symmetric_group(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int>              p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::string> names;
    for (auto const& q : perms) {
      std::string s;
      for (int i : q) {
        s += std::to_string(i);
      }
      names.push_back(s);
    }
    std::vector<int> t;
    for (auto const& a : perms) {
      for (auto const& b : perms) {
        std::vector<int> c(n);
        for (int i = 0; i < n; ++i) {
          c[i] = a[b[i]];
        }
        t.push_back(std::find(perms.begin(), perms.end(), c) - perms.begin());
      }
    }
    return std::make_shared<FinMonoid const>(
        FinMonoid::make(std::move(names), std::move(t), 0));
  }

  MonoidPtr product_monoid(FinMonoid const& m, FinMonoid const& n) {
    std::vector<std::string> names;
    std::vector<int>         t;
    int                      sn = n.size();
    for (std::size_t a = 0; a < m.size(); ++a) {
      for (std::size_t b = 0; b < n.size(); ++b) {
        names.push_back("(" + m.name(a) + "," + n.name(b) + ")");
      }
    }
    for (std::size_t x = 0; x < names.size(); ++x) {
      for (std::size_t y = 0; y < names.size(); ++y) {
        t.push_back(m.mul(x / sn, y / sn) * sn + n.mul(x % sn, y % sn));
      }
    }
    return std::make_shared<FinMonoid const>(FinMonoid::make(
        std::move(names), std::move(t), m.unit() * sn + n.unit()));
  }

  bool is_subgroup(FinMonoid const& m, Subgroup const& h) {
    if (h.empty()) {
      return false;
    }
    std::vector<char> in(m.size(), 0);
    for (int a : h) {
      if (a < 0 || static_cast<std::size_t>(a) >= m.size()) {
        return false;
      }
      in[a] = 1;
    }
    if (!in[m.unit()]) {
      return false;
    }
    for (int a : h) {
      int inv = m.inverse(a);
      if (inv < 0 || !in[inv]) {
        return false;
      }
      for (int b : h) {
        if (!in[m.mul(a, b)]) {
          return false;
        }
      }
    }
    return true;
  }

  void require_subgroup(FinMonoid const& m, Subgroup const& h) {
    if (!is_subgroup(m, h)) {
      throw Error(ErrorKind::not_a_subgroup,
                  "the given elements do not form a subgroup");
    }
  }

  Subgroup generated(FinMonoid const& m, std::vector<int> const& gens) {
    std::set<int>    s{m.unit()};
    std::vector<int> todo{m.unit()};
    while (!todo.empty()) {
      int a = todo.back();
      todo.pop_back();
      for (int g : gens) {
        int b = m.mul(a, g);
        if (s.insert(b).second) {
          todo.push_back(b);
        }
      }
    }
    return Subgroup(s.begin(), s.end());
  }

  std::vector<Subgroup> all_subgroups(FinGroup const& g) {
    require_group(g);
    std::set<Subgroup>    found;
    std::vector<Subgroup> todo{Subgroup{g.unit()}};
    found.insert(todo[0]);
    while (!todo.empty()) {
      Subgroup h = todo.back();
      todo.pop_back();
      for (std::size_t a = 0; a < g.size(); ++a) {
        if (std::binary_search(h.begin(), h.end(), static_cast<int>(a))) {
          continue;
        }
        std::vector<int> gens = h;
        gens.push_back(a);
        Subgroup k = generated(g, gens);
        if (found.insert(k).second) {
          todo.push_back(k);
        }
      }
    }
    std::vector<Subgroup> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
      return a.size() < b.size();
    });
    return out;
  }

  MonoidPtr subgroup_monoid(FinMonoid const& m, Subgroup const& h) {
    std::vector<std::string> names;
    std::vector<int>         t;
    int                      unit = -1;
    for (std::size_t k = 0; k < h.size(); ++k) {
      names.push_back(m.name(h[k]));
      if (h[k] == m.unit()) {
        unit = k;
      }
    }
    for (int a : h) {
      for (int b : h) {
        auto it = std::lower_bound(h.begin(), h.end(), m.mul(a, b));
        if (it == h.end() || *it != m.mul(a, b)) {
          throw Error(ErrorKind::not_a_subgroup, "not closed under products");
        }
        t.push_back(it - h.begin());
      }
    }
    if (unit < 0) {
      throw Error(ErrorKind::not_a_subgroup, "does not contain the unit");
    }
    return std::make_shared<FinMonoid const>(
        FinMonoid::make(std::move(names), std::move(t), unit));
  }

  void check_homomorphism(FinMonoid const&        h,
                          FinMonoid const&        g,
                          std::vector<int> const& phi) {
    if (phi.size() != h.size()) {
      throw Error(ErrorKind::not_a_homomorphism, "map has the wrong size");
    }
    for (int v : phi) {
      if (v < 0 || static_cast<std::size_t>(v) >= g.size()) {
        throw Error(ErrorKind::not_a_homomorphism, "value out of range");
      }
    }
    if (phi[h.unit()] != g.unit()) {
      throw Error(ErrorKind::not_a_homomorphism, "unit is not preserved");
    }
    for (std::size_t a = 0; a < h.size(); ++a) {
      for (std::size_t b = 0; b < h.size(); ++b) {
        if (phi[h.mul(a, b)] != g.mul(phi[a], phi[b])) {
          throw Error(ErrorKind::not_a_homomorphism,
                      "product (" + h.name(a) + ", " + h.name(b)
                          + ") is not preserved");
        }
      }
    }
  }

  std::vector<std::vector<int>> all_homomorphisms(FinMonoid const& h,
                                                  FinMonoid const& g) {
    std::vector<std::vector<int>> out;
    std::vector<int>              phi(h.size(), -1);
    int                           n = h.size();
    std::function<void(int)>      go = [&](int a) {
      if (a == n) {
        out.push_back(phi);
        return;
      }
      for (std::size_t v = 0; v < g.size(); ++v) {
        phi[a] = v;
        bool ok = a != h.unit() || static_cast<int>(v) == g.unit();
        for (int x = 0; x <= a && ok; ++x) {
          for (int y = 0; y <= a && ok; ++y) {
            int p = h.mul(x, y);
            if (p <= a && phi[p] != g.mul(phi[x], phi[y])) {
              ok = false;
            }
          }
        }
        if (ok) {
          go(a + 1);
        }
      }
      phi[a] = -1;
    };
    go(0);
    return out;
  }

  Subgroup units_group(FinMonoid const& m) {
    Subgroup u;
    for (std::size_t a = 0; a < m.size(); ++a) {
      if (m.inverse(a) >= 0) {
        u.push_back(a);
      }
    }
    return u;
  }

  bool is_good_subgroup(FinMonoid const& m, Subgroup const& h) {
    require_subgroup(m, h);
    for (std::size_t a = 0; a < m.size(); ++a) {
      for (int k : h) {
        if (k != m.unit() && m.mul(a, k) == static_cast<int>(a)) {
          return false;
        }
      }
    }
    return true;
  }

  GraphSubgroup graph_subgroup(MonoidPtr const&        h,
                               std::vector<int> const& phi,
                               MonoidPtr const&        g) {
    check_homomorphism(*h, *g, phi);
    GraphSubgroup r{h, g, phi, product_monoid(*h, *g), {}};
    for (std::size_t k = 0; k < h->size(); ++k) {
      r.elements.push_back(k * g->size() + phi[k]);
    }
    std::sort(r.elements.begin(), r.elements.end());
    return r;
  }

  Subgroup conjugate(FinGroup const& g, Subgroup const& h, int by) {
    Subgroup out;
    int      inv = g.inverse(by);
    for (int a : h) {
      out.push_back(g.mul(g.mul(by, a), inv));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

}  // namespace gcat
