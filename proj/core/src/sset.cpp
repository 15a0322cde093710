//
// gcat - exact computation with finite categories and group actions
//

#include "gcat/sset.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace gcat {

  namespace {

    struct U64VecHash {
      std::size_t operator()(std::vector<std::uint64_t> const& v) const noexcept {
        std::size_t h = v.size();
        for (auto x : v) {
          h ^= std::hash<std::uint64_t>()(x) + 0x9e3779b97f4a7c15ULL + (h << 6)
               + (h >> 2);
        }
        return h;
      }
    };

    std::vector<int> codes_key(std::vector<Simplex> const& v) {
      std::vector<int> k;
      k.reserve(2 * v.size());
      for (auto const& s : v) {
        auto c = s.code();
        k.push_back(static_cast<int>(static_cast<std::uint32_t>(c >> 32)));
        k.push_back(static_cast<int>(static_cast<std::uint32_t>(c)));
      }
      return k;
    }

    std::vector<Simplex> decode_key(std::vector<int> const& k) {
      std::vector<Simplex> v;
      for (std::size_t i = 0; i + 1 < k.size(); i += 2) {
        std::uint64_t c = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k[i])) << 32)
                          | static_cast<std::uint32_t>(k[i + 1]);
        v.push_back(Simplex::from_code(c));
      }
      return v;
    }

    // Drops the bit positions in `remove` from an n-bit mask.
    std::uint16_t compress(std::uint16_t mask, std::uint16_t remove, int nbits) {
      std::uint16_t out = 0;
      int           p   = 0;
      for (int j = 0; j < nbits; ++j) {
        if (!((remove >> j) & 1)) {
          if ((mask >> j) & 1) {
            out |= static_cast<std::uint16_t>(1u << p);
          }
          ++p;
        }
      }
      return out;
    }

    std::uint8_t u8(int x) {
      return static_cast<std::uint8_t>(x);
    }

    std::string simplex_label(FinSSet const& x, Simplex s) {
      std::string l = x.label(s.core_dim, s.core);
      if (s.degen != 0) {
        l += "^s" + std::to_string(s.degen);
      }
      return l;
    }

    Simplex shift(Simplex s, int copy, FinSSet const& x) {
      s.core += copy * static_cast<int>(x.count(s.core_dim));
      return s;
    }

  }  // namespace

  std::vector<int> surjection_of(int dim, std::uint16_t degen) {
    std::vector<int> s(dim + 1, 0);
    for (int j = 0; j < dim; ++j) {
      s[j + 1] = s[j] + (((degen >> j) & 1) ? 0 : 1);
    }
    return s;
  }

  std::uint16_t degen_of(std::vector<int> const& s) {
    std::uint16_t m = 0;
    for (std::size_t j = 0; j + 1 < s.size(); ++j) {
      if (s[j] == s[j + 1]) {
        m |= static_cast<std::uint16_t>(1u << j);
      }
    }
    return m;
  }

  ////////////////////////////////////////////////////////////////////////
  // FinSSet
  ////////////////////////////////////////////////////////////////////////

  std::optional<int> FinSSet::find_key(int n, std::vector<int> const& k) const {
    if (n < 0 || n > _cap) {
      return std::nullopt;
    }
    auto it = _key_index[n].find(k);
    if (it == _key_index[n].end()) {
      return std::nullopt;
    }
    return it->second;
  }

  Simplex FinSSet::restrict_core(int n, int id, std::vector<int> const& image) const {
    if (static_cast<int>(image.size()) == n + 1) {
      return nondeg(n, id);
    }
    int j = n;
    while (j >= 0 && std::binary_search(image.begin(), image.end(), j)) {
      --j;
    }
    Simplex          z = stored_face(n, id, j);
    std::vector<int> img;
    img.reserve(image.size());
    for (int v : image) {
      img.push_back(v > j ? v - 1 : v);
    }
    return apply(z, img);
  }

  Simplex FinSSet::apply(Simplex x, Operator const& theta) const {
    int              m     = static_cast<int>(theta.size()) - 1;
    std::vector<int> sigma = surjection_of(x.dim, x.degen);
    std::vector<int> image;
    std::vector<int> tau(m + 1);
    for (int t = 0; t <= m; ++t) {
      int v = sigma[theta[t]];
      if (image.empty() || image.back() != v) {
        image.push_back(v);
      }
      tau[t] = static_cast<int>(image.size()) - 1;
    }
    Simplex          y  = restrict_core(x.core_dim, x.core, image);
    std::vector<int> sy = surjection_of(y.dim, y.degen);
    std::vector<int> rho(m + 1);
    for (int t = 0; t <= m; ++t) {
      rho[t] = sy[tau[t]];
    }
    return Simplex{y.core, u8(m), y.core_dim, degen_of(rho)};
  }

  Simplex FinSSet::face(Simplex x, int i) const {
    Operator d(x.dim);
    for (int t = 0; t < x.dim; ++t) {
      d[t] = t < i ? t : t + 1;
    }
    return apply(x, d);
  }

  Simplex FinSSet::degeneracy(Simplex x, int j) const {
    Operator s(x.dim + 2);
    for (int t = 0; t <= x.dim + 1; ++t) {
      s[t] = t <= j ? t : t - 1;
    }
    return apply(x, s);
  }

  int FinSSet::vertex(Simplex x, int i) const {
    return apply(x, Operator{i}).core;
  }

  std::vector<Simplex> FinSSet::all_simplices(int n) const {
    std::vector<Simplex> out;
    for (int m = 0; m <= std::min(n, _cap); ++m) {
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != n - m) {
          continue;
        }
        for (std::size_t id = 0; id < count(m); ++id) {
          out.push_back(Simplex{static_cast<std::int32_t>(id), u8(n), u8(m),
                                static_cast<std::uint16_t>(mask)});
        }
      }
    }
    return out;
  }

  std::size_t FinSSet::total_count(int n) const {
    std::size_t total = 0;
    for (int m = 0; m <= std::min(n, _cap); ++m) {
      std::size_t binom = 1;
      for (int t = 0; t < n - m; ++t) {
        binom = binom * (n - t) / (t + 1);
      }
      total += binom * count(m);
    }
    return total;
  }

  std::size_t FinSSet::size() const {
    std::size_t s = 0;
    for (int n = 0; n <= _cap; ++n) {
      s += count(n);
    }
    return s;
  }

  FinSSet::Builder::Builder(int cap) {
    if (cap < 0 || cap > 14) {
      throw Error(ErrorKind::bad_index, "dimension cap must lie in 0..14");
    }
    _s._cap = cap;
    _s._labels.resize(cap + 1);
    _s._faces.resize(cap + 1);
    _s._keys.resize(cap + 1);
    _s._key_index.resize(cap + 1);
  }

  int FinSSet::Builder::add(int                  n,
                            std::vector<Simplex> faces,
                            std::string          label,
                            std::vector<int>     key) {
    if (n < 0 || n > _s._cap) {
      throw Error(ErrorKind::bad_index,
                  "simplex dimension " + std::to_string(n) + " exceeds cap");
    }
    if (static_cast<int>(faces.size()) != (n == 0 ? 0 : n + 1)) {
      throw Error(ErrorKind::malformed_input, "wrong number of faces for " + label);
    }
    for (auto const& f : faces) {
      if (f.dim != n - 1 || f.core_dim > f.dim
          || f.core < 0 || static_cast<std::size_t>(f.core) >= _s.count(f.core_dim)) {
        throw Error(ErrorKind::dangling_reference, "bad face of " + label);
      }
    }
    int id = static_cast<int>(_s._labels[n].size());
    _s._labels[n].push_back(std::move(label));
    _s._faces[n].insert(_s._faces[n].end(), faces.begin(), faces.end());
    if (!key.empty()) {
      if (!_s._key_index[n].emplace(key, id).second) {
        throw Error(ErrorKind::malformed_input,
                    "duplicate simplex key in dimension " + std::to_string(n));
      }
    }
    _s._keys[n].push_back(std::move(key));
    return id;
  }

  SSetPtr FinSSet::Builder::build() && {
    check_simplicial_identities(_s);
    return std::make_shared<FinSSet const>(std::move(_s));
  }

  void check_simplicial_identities(FinSSet const& x) {
    for (int n = 2; n <= x.cap(); ++n) {
      for (std::size_t id = 0; id < x.count(n); ++id) {
        Simplex s = FinSSet::nondeg(n, id);
        for (int j = 1; j <= n; ++j) {
          Simplex dj = x.face(s, j);
          for (int i = 0; i < j; ++i) {
            if (!(x.face(dj, i) == x.face(x.face(s, i), j - 1))) {
              throw Error(ErrorKind::malformed_input,
                          "simplicial identity d_" + std::to_string(i) + " d_"
                              + std::to_string(j) + " fails on "
                              + x.label(n, id));
            }
          }
        }
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Maps
  ////////////////////////////////////////////////////////////////////////

  Simplex SSetMap::operator()(Simplex x) const {
    Simplex y = image[x.core_dim][x.core];
    if (x.degen == 0) {
      return y;
    }
    return target->apply(y, surjection_of(x.dim, x.degen));
  }

  void check_map(SSetMap const& f) {
    FinSSet const& X = *f.source;
    FinSSet const& Y = *f.target;
    if (static_cast<int>(f.image.size()) != X.cap() + 1 || Y.cap() < X.cap()) {
      throw Error(ErrorKind::malformed_input, "map has the wrong dimension range");
    }
    for (int n = 0; n <= X.cap(); ++n) {
      if (f.image[n].size() != X.count(n)) {
        throw Error(ErrorKind::malformed_input, "map table has the wrong size");
      }
      for (std::size_t id = 0; id < X.count(n); ++id) {
        Simplex y = f.image[n][id];
        if (y.dim != n || y.core < 0
            || static_cast<std::size_t>(y.core) >= Y.count(y.core_dim)) {
          throw Error(ErrorKind::dangling_reference,
                      "image of " + X.label(n, id) + " is out of range");
        }
        for (int i = 0; i <= n && n > 0; ++i) {
          if (!(f(X.stored_face(n, id, i)) == Y.face(y, i))) {
            throw Error(ErrorKind::malformed_input,
                        "map does not commute with d_" + std::to_string(i)
                            + " on " + X.label(n, id));
          }
        }
      }
    }
  }

  SSetMap identity_map(SSetPtr const& x) {
    SSetMap f{x, x, {}};
    f.image.resize(x->cap() + 1);
    for (int n = 0; n <= x->cap(); ++n) {
      for (std::size_t id = 0; id < x->count(n); ++id) {
        f.image[n].push_back(FinSSet::nondeg(n, id));
      }
    }
    return f;
  }

  SSetMap compose(SSetMap const& g, SSetMap const& f) {
    SSetMap h{f.source, g.target, f.image};
    for (auto& level : h.image) {
      for (auto& s : level) {
        s = g(s);
      }
    }
    return h;
  }

  bool operator==(SSetMap const& a, SSetMap const& b) {
    return a.image == b.image;
  }

  bool is_injective(SSetMap const& f) {
    for (int n = 0; n <= f.source->cap(); ++n) {
      std::set<int> seen;
      for (auto const& s : f.image[n]) {
        if (s.degen != 0 || !seen.insert(s.core).second) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_isomorphism(SSetMap const& f) {
    if (f.source->cap() != f.target->cap() || !is_injective(f)) {
      return false;
    }
    for (int n = 0; n <= f.source->cap(); ++n) {
      if (f.source->count(n) != f.target->count(n)) {
        return false;
      }
    }
    return true;
  }

  void check_action(SSetAction const& a) {
    FinMonoid const& m = *a.monoid;
    if (a.act.size() != m.size()) {
      throw Error(ErrorKind::malformed_input, "action has the wrong number of maps");
    }
    for (auto const& f : a.act) {
      check_map(f);
    }
    if (!(a.act[m.unit()] == identity_map(a.carrier))) {
      throw Error(ErrorKind::not_a_homomorphism, "the unit does not act trivially");
    }
    for (std::size_t x = 0; x < m.size(); ++x) {
      for (std::size_t y = 0; y < m.size(); ++y) {
        if (!(a.act[m.mul(x, y)] == compose(a.act[x], a.act[y]))) {
          throw Error(ErrorKind::not_a_homomorphism,
                      "action is not multiplicative at (" + m.name(x) + ", "
                          + m.name(y) + ")");
        }
      }
    }
  }

  bool is_equivariant(SSetMap const& f, SSetAction const& a, SSetAction const& b) {
    for (std::size_t m = 0; m < a.act.size(); ++m) {
      if (!(compose(f, a.act[m]) == compose(b.act[m], f))) {
        return false;
      }
    }
    return true;
  }

  SubSSet sub_sset(SSetPtr const& x, std::vector<std::vector<char>> const& keep) {
    FinSSet const&                X = *x;
    FinSSet::Builder              b(X.cap());
    std::vector<std::vector<int>> nid(X.cap() + 1);
    SSetMap                       inc{nullptr, x, {}};
    inc.image.resize(X.cap() + 1);
    for (int n = 0; n <= X.cap(); ++n) {
      nid[n].assign(X.count(n), -1);
      for (std::size_t id = 0; id < X.count(n); ++id) {
        if (!keep[n][id]) {
          continue;
        }
        std::vector<Simplex> faces;
        for (int i = 0; i <= n && n > 0; ++i) {
          Simplex f = X.stored_face(n, id, i);
          int     c = nid[f.core_dim][f.core];
          if (c < 0) {
            throw Error(ErrorKind::malformed_input,
                        "subset is not closed under faces at " + X.label(n, id));
          }
          f.core = c;
          faces.push_back(f);
        }
        nid[n][id] = b.add(n, faces, X.label(n, id), X.key(n, id));
        inc.image[n].push_back(FinSSet::nondeg(n, id));
      }
    }
    inc.source = std::move(b).build();
    return SubSSet{inc.source, inc};
  }

  SubSSet fixed_points(SSetAction const& a, Subgroup const& h) {
    for (int k : h) {
      if (a.monoid->inverse(k) < 0) {
        throw Error(ErrorKind::subgroup_not_in_units,
                    "element '" + a.monoid->name(k) + "' is not a unit");
      }
    }
    FinSSet const&                 X = *a.carrier;
    std::vector<std::vector<char>> keep(X.cap() + 1);
    for (int n = 0; n <= X.cap(); ++n) {
      keep[n].assign(X.count(n), 1);
      for (std::size_t id = 0; id < X.count(n); ++id) {
        for (int k : h) {
          if (!(a.act[k].image[n][id] == FinSSet::nondeg(n, id))) {
            keep[n][id] = 0;
          }
        }
      }
    }
    return sub_sset(a.carrier, keep);
  }

  namespace {
    std::vector<std::vector<int>> reverse_index(SubSSet const& s) {
      std::vector<std::vector<int>> r(s.inclusion.target->cap() + 1);
      for (int n = 0; n <= s.inclusion.target->cap(); ++n) {
        r[n].assign(s.inclusion.target->count(n), -1);
        if (n <= s.set->cap()) {
          for (std::size_t id = 0; id < s.inclusion.image[n].size(); ++id) {
            r[n][s.inclusion.image[n][id].core] = id;
          }
        }
      }
      return r;
    }

    Simplex pull_back(std::vector<std::vector<int>> const& r, Simplex y) {
      int c = r[y.core_dim][y.core];
      if (c < 0) {
        throw Error(ErrorKind::equivariance_violation,
                    "image does not lie in the simplicial subset");
      }
      y.core = c;
      return y;
    }
  }  // namespace

  SSetMap fixed_map(SSetMap const& f, SubSSet const& src, SubSSet const& dst) {
    auto    r = reverse_index(dst);
    SSetMap g{src.set, dst.set, {}};
    g.image.resize(src.set->cap() + 1);
    for (int n = 0; n <= src.set->cap(); ++n) {
      for (auto const& x : src.inclusion.image[n]) {
        g.image[n].push_back(pull_back(r, f(x)));
      }
    }
    return g;
  }

  SSetAction restrict_to_sub(SSetAction const& a, SubSSet const& s) {
    SSetAction r{a.monoid, s.set, {}};
    for (auto const& f : a.act) {
      r.act.push_back(fixed_map(f, s, s));
    }
    return r;
  }

  std::vector<int> components(FinSSet const& x) {
    std::vector<int> uf(x.count(0));
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int a) {
      return uf[a] == a ? a : uf[a] = find(uf[a]);
    };
    if (x.cap() >= 1) {
      for (std::size_t e = 0; e < x.count(1); ++e) {
        int a = find(x.stored_face(1, e, 0).core);
        int b = find(x.stored_face(1, e, 1).core);
        if (a != b) {
          uf[std::max(a, b)] = std::min(a, b);
        }
      }
    }
    std::vector<int> label(uf.size());
    std::map<int, int> ids;
    for (std::size_t v = 0; v < uf.size(); ++v) {
      int r = find(v);
      auto it = ids.emplace(r, ids.size()).first;
      label[v] = it->second;
    }
    return label;
  }

  ////////////////////////////////////////////////////////////////////////
  // Nerves
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Normal form of a chain of composable morphisms starting at `start`.
    Simplex nerve_normal(FinSSet const&            n,
                         FinCat const&             c,
                         ObjId                     start,
                         std::vector<MorId> const& chain) {
      std::vector<int> red;
      std::uint16_t    mask = 0;
      for (std::size_t p = 0; p < chain.size(); ++p) {
        if (c.is_identity(chain[p])) {
          mask |= static_cast<std::uint16_t>(1u << p);
        } else {
          red.push_back(chain[p]);
        }
      }
      int dim = static_cast<int>(chain.size());
      if (red.empty()) {
        return Simplex{start, u8(dim), 0, mask};
      }
      auto id = n.find_key(red.size(), red);
      if (!id) {
        throw Error(ErrorKind::malformed_input, "chain missing from nerve");
      }
      return Simplex{*id, u8(dim), u8(red.size()), mask};
    }
  }  // namespace

  SSetPtr nerve(CatPtr const& cp, int cap, Limits const& limits) {
    FinCat const&    c = *cp;
    FinSSet::Builder b(cap);
    for (std::size_t x = 0; x < c.num_objects(); ++x) {
      b.add(0, {}, c.object_name(x), {static_cast<int>(x)});
    }
    std::size_t                     total = c.num_objects();
    std::vector<std::vector<MorId>> prev;
    for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
      if (!c.is_identity(f)) {
        prev.push_back({static_cast<MorId>(f)});
      }
    }
    for (int n = 1; n <= cap; ++n) {
      std::vector<std::vector<MorId>> next;
      for (auto const& ch : prev) {
        std::vector<Simplex> faces;
        ObjId                s0 = c.source(ch.front());
        for (int i = 0; i <= n; ++i) {
          std::vector<MorId> d;
          ObjId              start = s0;
          if (i == 0) {
            d.assign(ch.begin() + 1, ch.end());
            start = c.target(ch.front());
          } else if (i == n) {
            d.assign(ch.begin(), ch.end() - 1);
          } else {
            d.assign(ch.begin(), ch.begin() + (i - 1));
            d.push_back(c.compose(ch[i], ch[i - 1]));
            d.insert(d.end(), ch.begin() + i + 1, ch.end());
          }
          faces.push_back(nerve_normal(b.partial(), c, start, d));
        }
        std::string label;
        for (std::size_t p = 0; p < ch.size(); ++p) {
          label += (p ? "," : "") + c.morphism_name(ch[p]);
        }
        b.add(n, faces, label, ch);
        check_cap("nerve simplices", ++total, limits.max_simplices);
        if (n < cap) {
          for (MorId g : c.out(c.target(ch.back()))) {
            if (!c.is_identity(g)) {
              auto e = ch;
              e.push_back(g);
              next.push_back(std::move(e));
            }
          }
        }
      }
      prev = std::move(next);
    }
    return std::move(b).build();
  }

  SSetMap nerve_map(Functor const& f, SSetPtr const& source, SSetPtr const& target) {
    SSetMap m{source, target, {}};
    m.image.resize(source->cap() + 1);
    FinCat const& C = *f.source;
    FinCat const& D = *f.target;
    for (int n = 0; n <= source->cap(); ++n) {
      for (std::size_t id = 0; id < source->count(n); ++id) {
        auto const& k = source->key(n, id);
        if (n == 0) {
          m.image[0].push_back(FinSSet::nondeg(0, f.objects[k[0]]));
          continue;
        }
        std::vector<MorId> ch;
        for (MorId g : k) {
          ch.push_back(f.morphisms[g]);
        }
        m.image[n].push_back(nerve_normal(*target, D, f.objects[C.source(k[0])], ch));
      }
    }
    return m;
  }

  SSetAction equivariant_nerve(CatAction const& a, SSetPtr const& n) {
    SSetAction r{a.monoid, n, {}};
    for (auto const& f : a.act) {
      r.act.push_back(nerve_map(f, n, n));
    }
    return r;
  }

  CatPtr homotopy_category_of_poset_nerve(FinSSet const& x) {
    auto refuse = [](std::string const& why) {
      return Error(ErrorKind::not_a_poset_nerve, why);
    };
    int                            nv = x.count(0);
    std::vector<std::vector<char>> le(nv, std::vector<char>(nv, 0));
    std::map<std::pair<int, int>, int> edge;
    for (int v = 0; v < nv; ++v) {
      le[v][v] = 1;
    }
    if (x.cap() >= 1) {
      for (std::size_t e = 0; e < x.count(1); ++e) {
        Simplex a = x.stored_face(1, e, 1), b = x.stored_face(1, e, 0);
        if (a.core == b.core) {
          throw refuse("edge " + x.label(1, e) + " is a loop");
        }
        if (!edge.emplace(std::pair(a.core, b.core), e).second) {
          throw refuse("two edges between the same vertices");
        }
        le[a.core][b.core] = 1;
      }
    }
    for (int a = 0; a < nv; ++a) {
      for (int b = 0; b < nv; ++b) {
        if (a != b && le[a][b] && le[b][a]) {
          throw refuse("edges in both directions");
        }
        for (int c = 0; c < nv; ++c) {
          if (le[a][b] && le[b][c] && !le[a][c]) {
            throw refuse("edge relation is not transitive");
          }
        }
      }
    }
    // higher simplices must be exactly the strict chains
    for (int n = 2; n <= x.cap(); ++n) {
      std::set<std::vector<int>> seen;
      for (std::size_t id = 0; id < x.count(n); ++id) {
        Simplex          s = FinSSet::nondeg(n, id);
        std::vector<int> vs;
        for (int i = 0; i <= n; ++i) {
          vs.push_back(x.vertex(s, i));
        }
        for (int i = 0; i < n; ++i) {
          if (vs[i] == vs[i + 1] || !le[vs[i]][vs[i + 1]]) {
            throw refuse("simplex " + x.label(n, id) + " is not a strict chain");
          }
        }
        if (!seen.insert(vs).second) {
          throw refuse("two simplices on the same chain");
        }
      }
      // count strict chains of length n + 1
      std::size_t              chains = 0;
      std::function<void(int, int)> go = [&](int last, int len) {
        if (len == n + 1) {
          ++chains;
          return;
        }
        for (int w = 0; w < nv; ++w) {
          if (w != last && le[last][w]) {
            go(w, len + 1);
          }
        }
      };
      for (int v = 0; v < nv; ++v) {
        go(v, 1);
      }
      if (chains != x.count(n)) {
        throw refuse("missing chains in dimension " + std::to_string(n));
      }
    }
    std::vector<std::string> names;
    std::set<std::string>    uniq;
    for (int v = 0; v < nv; ++v) {
      names.push_back(x.label(0, v));
      uniq.insert(names.back());
    }
    if (uniq.size() != names.size()) {
      for (int v = 0; v < nv; ++v) {
        names[v] = std::to_string(v);
      }
    }
    return poset_category(names, [&](int a, int b) { return le[a][b] != 0; },
                          Limits::sized(nv, static_cast<std::size_t>(nv) * nv));
  }

  ////////////////////////////////////////////////////////////////////////
  // Products
  ////////////////////////////////////////////////////////////////////////

  namespace {
    Simplex normalize_pair(FinSSet const& p, Simplex a, Simplex b) {
      int           n = a.dim;
      std::uint16_t M = a.degen & b.degen;
      int           r = n - std::popcount(M);
      Simplex a2{a.core, u8(r), a.core_dim, compress(a.degen, M, n)};
      Simplex b2{b.core, u8(r), b.core_dim, compress(b.degen, M, n)};
      auto    id = p.find_key(r, codes_key({a2, b2}));
      if (!id) {
        throw Error(ErrorKind::malformed_input, "pair missing from product");
      }
      return Simplex{*id, u8(n), u8(r), M};
    }
  }  // namespace

  SSetPtr product(SSetPtr const& xp, SSetPtr const& yp, Limits const& limits) {
    FinSSet const&   X   = *xp;
    FinSSet const&   Y   = *yp;
    int              cap = std::min(X.cap(), Y.cap());
    FinSSet::Builder b(cap);
    std::size_t      total = 0;
    for (int n = 0; n <= cap; ++n) {
      auto xs = X.all_simplices(n);
      auto ys = Y.all_simplices(n);
      for (auto const& a : xs) {
        for (auto const& c : ys) {
          if ((a.degen & c.degen) != 0) {
            continue;
          }
          std::vector<Simplex> faces;
          for (int i = 0; i <= n && n > 0; ++i) {
            faces.push_back(normalize_pair(b.partial(), X.face(a, i), Y.face(c, i)));
          }
          b.add(n, faces, "(" + simplex_label(X, a) + "," + simplex_label(Y, c) + ")",
                codes_key({a, c}));
          check_cap("product simplices", ++total, limits.max_simplices);
        }
      }
    }
    return std::move(b).build();
  }

  SSetMap product_projection(SSetPtr const& prod, SSetPtr const& x, SSetPtr const& y,
                             int which) {
    SSetMap m{prod, which == 0 ? x : y, {}};
    m.image.resize(prod->cap() + 1);
    for (int n = 0; n <= prod->cap(); ++n) {
      for (std::size_t id = 0; id < prod->count(n); ++id) {
        m.image[n].push_back(decode_key(prod->key(n, id))[which]);
      }
    }
    return m;
  }

  SSetMap pairing(SSetMap const& f, SSetMap const& g, SSetPtr const& prod) {
    SSetMap m{f.source, prod, {}};
    m.image.resize(f.source->cap() + 1);
    for (int n = 0; n <= f.source->cap(); ++n) {
      for (std::size_t id = 0; id < f.source->count(n); ++id) {
        m.image[n].push_back(
            normalize_pair(*prod, f.image[n][id], g.image[n][id]));
      }
    }
    return m;
  }

  ////////////////////////////////////////////////////////////////////////
  // Ordered complexes
  ////////////////////////////////////////////////////////////////////////

  namespace {
    bool size_lex(std::vector<int> const& a, std::vector<int> const& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    }
  }  // namespace

  OrderedComplex make_complex(int num_vertices,
                              std::vector<std::vector<int>> const& generators) {
    std::set<std::vector<int>> faces;
    for (auto g : generators) {
      std::sort(g.begin(), g.end());
      g.erase(std::unique(g.begin(), g.end()), g.end());
      if (g.size() > 15) {
        throw Error(ErrorKind::size_cap_exceeded, "face too large");
      }
      for (int v : g) {
        if (v < 0 || v >= num_vertices) {
          throw Error(ErrorKind::bad_index, "vertex out of range");
        }
      }
      for (std::uint32_t m = 1; m < (1u << g.size()); ++m) {
        std::vector<int> f;
        for (std::size_t i = 0; i < g.size(); ++i) {
          if ((m >> i) & 1) {
            f.push_back(g[i]);
          }
        }
        faces.insert(f);
      }
    }
    OrderedComplex k{num_vertices, {faces.begin(), faces.end()}, {}};
    std::sort(k.faces.begin(), k.faces.end(), size_lex);
    return k;
  }

  OrderedComplex simplex_complex(int n) {
    if (n < 0) {
      throw Error(ErrorKind::bad_index, "negative dimension");
    }
    std::vector<int> all(n + 1);
    std::iota(all.begin(), all.end(), 0);
    return make_complex(n + 1, {all});
  }

  OrderedComplex boundary_complex(int n) {
    if (n < 0) {
      throw Error(ErrorKind::bad_index, "negative dimension");
    }
    std::vector<std::vector<int>> gens;
    for (int i = 0; i <= n && n > 0; ++i) {
      std::vector<int> f;
      for (int v = 0; v <= n; ++v) {
        if (v != i) {
          f.push_back(v);
        }
      }
      gens.push_back(f);
    }
    return make_complex(n + 1, gens);
  }

  OrderedComplex horn_complex(int n, int k) {
    if (n < 1 || k < 0 || k > n) {
      throw Error(ErrorKind::bad_index,
                  "horn index out of range: n = " + std::to_string(n)
                      + ", k = " + std::to_string(k));
    }
    std::vector<std::vector<int>> gens;
    for (int i = 0; i <= n; ++i) {
      if (i == k) {
        continue;
      }
      std::vector<int> f;
      for (int v = 0; v <= n; ++v) {
        if (v != i) {
          f.push_back(v);
        }
      }
      gens.push_back(f);
    }
    return make_complex(n + 1, gens);
  }

  bool is_subcomplex(OrderedComplex const& k, OrderedComplex const& l) {
    if (k.num_vertices != l.num_vertices) {
      return false;
    }
    std::set<std::vector<int>> lf(l.faces.begin(), l.faces.end());
    for (auto const& f : k.faces) {
      if (!lf.count(f)) {
        return false;
      }
    }
    return true;
  }

  std::string face_name(OrderedComplex const& k, std::vector<int> const& face) {
    std::string s;
    bool        named = !k.vertex_names.empty();
    s += named ? "{" : "[";
    for (std::size_t i = 0; i < face.size(); ++i) {
      s += (i ? "," : "")
           + (named ? k.vertex_names[face[i]] : std::to_string(face[i]));
    }
    s += named ? "}" : "]";
    return s;
  }

  CatPtr face_poset(OrderedComplex const& k) {
    std::vector<std::string> names;
    for (auto const& f : k.faces) {
      names.push_back(face_name(k, f));
    }
    std::size_t n = names.size();
    return poset_category(
        names,
        [&](int a, int b) {
          return std::includes(k.faces[b].begin(), k.faces[b].end(),
                               k.faces[a].begin(), k.faces[a].end());
        },
        Limits::sized(std::max<std::size_t>(n, 64), std::max<std::size_t>(n * n, 512)));
  }

  OrderedComplex sd_complex(OrderedComplex const& k) {
    OrderedComplex sd;
    sd.num_vertices = k.faces.size();
    for (auto const& f : k.faces) {
      sd.vertex_names.push_back(face_name(k, f));
    }
    std::vector<std::vector<int>> chains;
    std::vector<int>              cur;
    std::function<void(int)>      go = [&](int last) {
      chains.push_back(cur);
      for (std::size_t j = last + 1; j < k.faces.size(); ++j) {
        auto const& a = k.faces[last];
        auto const& b = k.faces[j];
        if (b.size() > a.size() && std::includes(b.begin(), b.end(), a.begin(), a.end())) {
          cur.push_back(j);
          go(j);
          cur.pop_back();
        }
      }
    };
    for (std::size_t i = 0; i < k.faces.size(); ++i) {
      cur = {static_cast<int>(i)};
      go(i);
    }
    std::sort(chains.begin(), chains.end(), size_lex);
    sd.faces = std::move(chains);
    return sd;
  }

  namespace {
    Functor poset_map_by_name(CatPtr const& pk, CatPtr const& pl) {
      Functor f{pk, pl, {}, {}};
      for (std::size_t x = 0; x < pk->num_objects(); ++x) {
        auto y = pl->find_object(pk->object_name(x));
        if (!y) {
          throw Error(ErrorKind::not_a_subcategory_inclusion,
                      "face " + pk->object_name(x) + " is missing from the larger complex");
        }
        f.objects.push_back(*y);
      }
      for (std::size_t m = 0; m < pk->num_morphisms(); ++m) {
        auto h = pl->hom(f.objects[pk->source(m)], f.objects[pk->target(m)]);
        f.morphisms.push_back(h.front());
      }
      check_functor(f);
      return f;
    }
  }  // namespace

  Functor face_poset_map(OrderedComplex const& k, OrderedComplex const& l,
                         CatPtr const& pk, CatPtr const& pl) {
    if (!is_subcomplex(k, l)) {
      throw Error(ErrorKind::not_a_subcategory_inclusion, "K is not a subcomplex of L");
    }
    return poset_map_by_name(pk, pl);
  }

  CatPtr h_sd2(OrderedComplex const& k) {
    return face_poset(sd_complex(k));
  }

  Functor h_sd2_map(OrderedComplex const& k, OrderedComplex const& l) {
    if (!is_subcomplex(k, l)) {
      throw Error(ErrorKind::not_a_subcategory_inclusion, "K is not a subcomplex of L");
    }
    return poset_map_by_name(h_sd2(k), h_sd2(l));
  }

  SSetPtr complex_sset(OrderedComplex const& k, int cap) {
    FinSSet::Builder b(cap);
    for (int n = 0; n <= cap; ++n) {
      for (auto const& f : k.faces) {
        if (static_cast<int>(f.size()) != n + 1) {
          continue;
        }
        std::vector<Simplex> faces;
        for (int i = 0; i <= n && n > 0; ++i) {
          std::vector<int> d = f;
          d.erase(d.begin() + i);
          faces.push_back(FinSSet::nondeg(n - 1, *b.find_key(n - 1, d)));
        }
        b.add(n, faces, face_name(k, f), f);
      }
    }
    return std::move(b).build();
  }

  SSetMap complex_inclusion(SSetPtr const& k, SSetPtr const& l) {
    SSetMap m{k, l, {}};
    m.image.resize(k->cap() + 1);
    for (int n = 0; n <= k->cap(); ++n) {
      for (std::size_t id = 0; id < k->count(n); ++id) {
        auto j = l->find_key(n, k->key(n, id));
        if (!j) {
          throw Error(ErrorKind::not_a_subcategory_inclusion,
                      "simplex " + k->label(n, id) + " is missing from the target");
        }
        m.image[n].push_back(FinSSet::nondeg(n, *j));
      }
    }
    return m;
  }

  SSetPtr standard_simplex(int n, int cap) {
    return complex_sset(simplex_complex(n), cap);
  }

  SSetPtr standard_boundary(int n, int cap) {
    return complex_sset(boundary_complex(n), cap);
  }

  SSetPtr standard_horn(int n, int k, int cap) {
    return complex_sset(horn_complex(n, k), cap);
  }

  InducedCell induced_cell(MonoidPtr const& g, Subgroup const& h, SSetPtr const& xp) {
    require_group(*g);
    require_subgroup(*g, h);
    std::set<Subgroup> cs;
    for (std::size_t a = 0; a < g->size(); ++a) {
      Subgroup c;
      for (int k : h) {
        c.push_back(g->mul(a, k));
      }
      std::sort(c.begin(), c.end());
      cs.insert(c);
    }
    InducedCell out;
    out.cosets.assign(cs.begin(), cs.end());
    FinSSet const&   X = *xp;
    int              nc = out.cosets.size();
    FinSSet::Builder b(X.cap());
    for (int n = 0; n <= X.cap(); ++n) {
      for (int c = 0; c < nc; ++c) {
        for (std::size_t id = 0; id < X.count(n); ++id) {
          std::vector<Simplex> faces;
          for (int i = 0; i <= n && n > 0; ++i) {
            faces.push_back(shift(X.stored_face(n, id, i), c, X));
          }
          b.add(n, faces, g->name(out.cosets[c][0]) + "H:" + X.label(n, id),
                {c, static_cast<int>(id)});
        }
      }
    }
    SSetPtr carrier = std::move(b).build();
    out.action      = SSetAction{g, carrier, {}};
    for (std::size_t a = 0; a < g->size(); ++a) {
      std::vector<int> perm(nc);
      for (int c = 0; c < nc; ++c) {
        int t = g->mul(a, out.cosets[c][0]);
        for (int d = 0; d < nc; ++d) {
          if (std::binary_search(out.cosets[d].begin(), out.cosets[d].end(), t)) {
            perm[c] = d;
          }
        }
      }
      SSetMap m{carrier, carrier, {}};
      m.image.resize(X.cap() + 1);
      for (int n = 0; n <= X.cap(); ++n) {
        for (int c = 0; c < nc; ++c) {
          for (std::size_t id = 0; id < X.count(n); ++id) {
            m.image[n].push_back(FinSSet::nondeg(n, perm[c] * X.count(n) + id));
          }
        }
      }
      out.action.act.push_back(std::move(m));
    }
    check_action(out.action);
    return out;
  }

  SSetMap induced_map(InducedCell const& a, InducedCell const& b, SSetMap const& f) {
    if (a.cosets != b.cosets) {
      throw Error(ErrorKind::malformed_input, "induced cells over different cosets");
    }
    FinSSet const& X  = *f.source;
    FinSSet const& Y  = *f.target;
    int            nc = a.cosets.size();
    SSetMap        m{a.action.carrier, b.action.carrier, {}};
    m.image.resize(X.cap() + 1);
    for (int n = 0; n <= X.cap(); ++n) {
      for (int c = 0; c < nc; ++c) {
        for (std::size_t id = 0; id < X.count(n); ++id) {
          m.image[n].push_back(shift(f.image[n][id], c, Y));
        }
      }
    }
    return m;
  }

  SSetMap last_vertex_map(SSetPtr const& sdk, OrderedComplex const& k, SSetPtr const& kset) {
    SSetMap m{sdk, kset, {}};
    m.image.resize(sdk->cap() + 1);
    for (int n = 0; n <= sdk->cap(); ++n) {
      for (std::size_t id = 0; id < sdk->count(n); ++id) {
        std::vector<int> seq;
        for (int v : sdk->key(n, id)) {
          seq.push_back(k.faces[v].back());
        }
        std::vector<int> distinct;
        for (int v : seq) {
          if (distinct.empty() || distinct.back() != v) {
            distinct.push_back(v);
          }
        }
        auto j = kset->find_key(distinct.size() - 1, distinct);
        m.image[n].push_back(Simplex{*j, u8(n), u8(distinct.size() - 1), degen_of(seq)});
      }
    }
    return m;
  }

  InducedCellSd induced_cell_sd(MonoidPtr const& g, Subgroup const& h,
                                OrderedComplex const& k, int cap) {
    SSetPtr sdset = complex_sset(sd_complex(k), cap);
    SSetPtr kset  = complex_sset(k, cap);
    SSetMap d     = last_vertex_map(sdset, k, kset);
    InducedCellSd out{induced_cell(g, h, sdset), induced_cell(g, h, kset), {}};
    out.comparison = induced_map(out.sd_cell, out.cell, d);
    return out;
  }

  SSetMap to_point(SSetPtr const& x) {
    SSetPtr pt = standard_simplex(0, x->cap());
    SSetMap m{x, pt, {}};
    m.image.resize(x->cap() + 1);
    for (int n = 0; n <= x->cap(); ++n) {
      std::uint16_t all = static_cast<std::uint16_t>((1u << n) - 1);
      m.image[n].assign(x->count(n), Simplex{0, u8(n), 0, all});
    }
    return m;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subdivided simplices and Ex
  ////////////////////////////////////////////////////////////////////////

  namespace {

    using Chain = std::vector<std::uint16_t>;

    struct SdData {
      int                                               n = 0;
      std::vector<Chain>                                chains;
      std::unordered_map<std::vector<int>, int, IntVecHash> index;
      std::vector<std::vector<int>>                     faces;
      std::vector<int>                                  order;
      // precomposition tables: chain of the source ↦ (chain, degeneracy)
      std::vector<std::vector<std::pair<int, std::uint16_t>>> face_op;
      std::vector<std::vector<std::pair<int, std::uint16_t>>> degen_op;
    };

    std::vector<int> chain_key(Chain const& c) {
      return std::vector<int>(c.begin(), c.end());
    }

    std::vector<std::pair<int, std::uint16_t>>
    sd_operator(SdData const& from, SdData const& to, Operator const& theta) {
      std::vector<std::pair<int, std::uint16_t>> out;
      for (auto const& c : from.chains) {
        Chain            weak;
        for (auto f : c) {
          std::uint16_t img = 0;
          for (int v = 0; v <= from.n; ++v) {
            if ((f >> v) & 1) {
              img |= static_cast<std::uint16_t>(1u << theta[v]);
            }
          }
          weak.push_back(img);
        }
        Chain         strict;
        std::uint16_t mask = 0;
        for (std::size_t i = 0; i < weak.size(); ++i) {
          if (i > 0 && weak[i] == weak[i - 1]) {
            mask |= static_cast<std::uint16_t>(1u << (i - 1));
          } else {
            strict.push_back(weak[i]);
          }
        }
        out.emplace_back(to.index.at(chain_key(strict)), mask);
      }
      return out;
    }

    SdData const& sd_data(int n) {
      static std::mutex                           mtx;
      static std::map<int, std::unique_ptr<SdData>> cache;
      std::lock_guard<std::mutex>                 lock(mtx);
      if (n < 0 || n > 6) {
        throw Error(ErrorKind::bad_index, "subdivided simplex dimension out of range");
      }
      auto it = cache.find(n);
      if (it != cache.end()) {
        return *it->second;
      }
      auto d  = std::make_unique<SdData>();
      d->n    = n;
      int top = (1 << (n + 1)) - 1;
      std::function<void(Chain&)> go = [&](Chain& c) {
        d->chains.push_back(c);
        for (int m = 1; m <= top; ++m) {
          if (m != c.back() && (m & c.back()) == c.back()) {
            c.push_back(m);
            go(c);
            c.pop_back();
          }
        }
      };
      for (int m = 1; m <= top; ++m) {
        Chain c{static_cast<std::uint16_t>(m)};
        go(c);
      }
      auto rank = [](std::uint16_t m) { return std::pair(std::popcount(m), m); };
      std::sort(d->chains.begin(), d->chains.end(), [&](Chain const& a, Chain const& b) {
        if (a.size() != b.size()) {
          return a.size() < b.size();
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (a[i] != b[i]) {
            return rank(a[i]) < rank(b[i]);
          }
        }
        return false;
      });
      for (std::size_t i = 0; i < d->chains.size(); ++i) {
        d->index.emplace(chain_key(d->chains[i]), i);
      }
      d->faces.resize(d->chains.size());
      for (std::size_t i = 0; i < d->chains.size(); ++i) {
        auto const& c = d->chains[i];
        if (c.size() < 2) {
          continue;
        }
        for (std::size_t j = 0; j < c.size(); ++j) {
          Chain e = c;
          e.erase(e.begin() + j);
          d->faces[i].push_back(d->index.at(chain_key(e)));
        }
      }
      // search order: along each flag, sub-chains by (last position, size)
      std::vector<char> seen(d->chains.size(), 0);
      std::vector<int>  perm(n + 1);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::vector<std::uint16_t> flag;
        std::uint16_t              acc = 0;
        for (int v : perm) {
          acc |= static_cast<std::uint16_t>(1u << v);
          flag.push_back(acc);
        }
        std::vector<std::uint32_t> subsets;
        for (std::uint32_t s = 1; s < (1u << (n + 1)); ++s) {
          subsets.push_back(s);
        }
        std::sort(subsets.begin(), subsets.end(), [](std::uint32_t a, std::uint32_t b) {
          int la = 31 - std::countl_zero(a), lb = 31 - std::countl_zero(b);
          if (la != lb) {
            return la < lb;
          }
          if (std::popcount(a) != std::popcount(b)) {
            return std::popcount(a) < std::popcount(b);
          }
          return a < b;
        });
        for (auto s : subsets) {
          Chain c;
          for (int p = 0; p <= n; ++p) {
            if ((s >> p) & 1) {
              c.push_back(flag[p]);
            }
          }
          int idx = d->index.at(chain_key(c));
          if (!seen[idx]) {
            seen[idx] = 1;
            d->order.push_back(idx);
          }
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      auto* raw = d.get();
      cache.emplace(n, std::move(d));
      // operators need the neighbouring dimension; build without the lock
      // recursion by filling them lazily below
      return *raw;
    }

    // Precomposition tables for faces δ_i : [n-1] → [n] and the idempotents
    // δ_j σ_j : [n] → [n].
    struct SdOps {
      std::vector<std::vector<std::pair<int, std::uint16_t>>> face_op;
      std::vector<std::vector<std::pair<int, std::uint16_t>>> degen_op;
    };

    SdOps const& sd_ops(int n) {
      static std::mutex                            mtx;
      static std::map<int, std::unique_ptr<SdOps>> cache;
      SdData const&                                to = sd_data(n);
      SdData const* from = n > 0 ? &sd_data(n - 1) : nullptr;
      std::lock_guard<std::mutex>                  lock(mtx);
      auto                                         it = cache.find(n);
      if (it != cache.end()) {
        return *it->second;
      }
      auto ops = std::make_unique<SdOps>();
      for (int i = 0; i <= n && n > 0; ++i) {
        Operator d(n);
        for (int t = 0; t < n; ++t) {
          d[t] = t < i ? t : t + 1;
        }
        ops->face_op.push_back(sd_operator(*from, to, d));
      }
      for (int j = 0; j < n; ++j) {
        Operator th(n + 1);
        for (int t = 0; t <= n; ++t) {
          int s = t <= j ? t : t - 1;
          th[t] = s < j ? s : s + 1;
        }
        ops->degen_op.push_back(sd_operator(to, to, th));
      }
      auto* raw = ops.get();
      cache.emplace(n, std::move(ops));
      return *raw;
    }

    using Assignment = std::vector<Simplex>;

    Assignment precompose(FinSSet const&                                    x,
                          Assignment const&                                 z,
                          std::vector<std::pair<int, std::uint16_t>> const& op,
                          SdData const&                                     from) {
      Assignment w(op.size());
      for (std::size_t c = 0; c < op.size(); ++c) {
        auto [idx, mask] = op[c];
        if (mask == 0) {
          w[c] = z[idx];
        } else {
          int len = static_cast<int>(from.chains[c].size()) - 1;
          w[c]    = x.apply(z[idx], surjection_of(len, mask));
        }
      }
      return w;
    }

    // Simplices of X by their face tuples, for candidate lookup.
    struct FaceIndex {
      FinSSet const&       x;
      std::vector<Simplex> vertices;
      std::vector<std::unordered_map<std::vector<std::uint64_t>, std::vector<Simplex>, U64VecHash>>
          by_faces;

      FaceIndex(FinSSet const& xx, int maxdim) : x(xx) {
        vertices = x.all_simplices(0);
        by_faces.resize(maxdim + 1);
        for (int k = 1; k <= maxdim; ++k) {
          for (auto const& s : x.all_simplices(k)) {
            std::vector<std::uint64_t> key;
            for (int i = 0; i <= k; ++i) {
              key.push_back(x.face(s, i).code());
            }
            by_faces[k][key].push_back(s);
          }
        }
      }

      std::vector<Simplex> const* candidates(SdData const& sd, int c, Assignment const& a) const {
        static std::vector<Simplex> const none;
        auto const&                       ch = sd.chains[c];
        if (ch.size() == 1) {
          return &vertices;
        }
        std::vector<std::uint64_t> key;
        for (int f : sd.faces[c]) {
          key.push_back(a[f].code());
        }
        auto it = by_faces[ch.size() - 1].find(key);
        return it == by_faces[ch.size() - 1].end() ? &none : &it->second;
      }
    };

    // Enumerates maps Sd Δⁿ ⊇ subset → X extending the preset entries.
    // visit returns true to stop; the return value reports whether it did.
    class MapSearch {
     public:
      MapSearch(FaceIndex const& idx, SdData const& sd, std::vector<char> const& subset,
                Assignment& a, std::vector<char> const& preset, Limits const& limits)
          : _idx(idx), _sd(sd), _a(a), _limits(limits) {
        for (int c : sd.order) {
          if ((subset.empty() || subset[c]) && (preset.empty() || !preset[c])) {
            _steps.push_back(c);
          }
        }
      }

      bool run(std::function<bool(int, Simplex)> const& filter,
               std::function<bool(Assignment const&)> const& visit) {
        _filter = &filter;
        _visit  = &visit;
        return go(0);
      }

      std::size_t nodes() const noexcept {
        return _nodes;
      }

     private:
      bool go(std::size_t i) {
        if (i == _steps.size()) {
          return (*_visit)(_a);
        }
        int  c     = _steps[i];
        auto cands = _idx.candidates(_sd, c, _a);
        for (Simplex s : *cands) {
          if (++_nodes > _limits.max_candidates * 64) {
            throw_size_cap("Ex enumeration candidates", _nodes, _limits.max_candidates * 64);
          }
          if (*_filter && !(*_filter)(c, s)) {
            continue;
          }
          _a[c] = s;
          if (go(i + 1)) {
            return true;
          }
        }
        return false;
      }

      FaceIndex const&                              _idx;
      SdData const&                                 _sd;
      Assignment&                                   _a;
      Limits                                        _limits;
      std::vector<int>                              _steps;
      std::size_t                                   _nodes = 0;
      std::function<bool(int, Simplex)> const*      _filter = nullptr;
      std::function<bool(Assignment const&)> const* _visit  = nullptr;
    };

    // Normal form in Ex of a map Sd Δᵐ → X.
    Simplex ex_normalize(FinSSet const& base, FinSSet const& ex, Assignment const& w, int m) {
      if (auto id = ex.find_key(m, codes_key(w))) {
        return FinSSet::nondeg(m, *id);
      }
      SdOps const&  ops = sd_ops(m);
      SdData const& sd  = sd_data(m);
      for (int j = 0; j < m; ++j) {
        if (precompose(base, w, ops.degen_op[j], sd) == w) {
          SdOps const& lower = sd_ops(m);
          Assignment   y     = precompose(base, w, lower.face_op[j], sd_data(m - 1));
          return ex.degeneracy(ex_normalize(base, ex, y, m - 1), j);
        }
      }
      throw Error(ErrorKind::malformed_input,
                  "map out of the subdivided simplex is missing from Ex");
    }

    std::vector<char> horn_subset(SdData const& sd, int k) {
      int               n   = sd.n;
      std::uint16_t     all = static_cast<std::uint16_t>((1u << (n + 1)) - 1);
      std::vector<char> in(sd.chains.size(), 0);
      for (std::size_t c = 0; c < sd.chains.size(); ++c) {
        std::uint16_t top     = sd.chains[c].back();
        std::uint16_t missing = static_cast<std::uint16_t>(all & ~top & ~(1u << k));
        in[c]                 = missing != 0;
      }
      return in;
    }

  }  // namespace

  std::vector<std::vector<std::uint16_t>> const& sd_simplex_chains(int n) {
    return sd_data(n).chains;
  }

  SSetPtr ex(SSetPtr const& xp, int cap, Limits const& limits) {
    FinSSet const& X = *xp;
    if (X.cap() < cap) {
      throw Error(ErrorKind::bad_index,
                  "Ex up to dimension " + std::to_string(cap)
                      + " needs the input up to the same dimension");
    }
    FaceIndex        idx(X, cap);
    FinSSet::Builder b(cap);
    std::size_t      total = 0;
    for (int n = 0; n <= cap; ++n) {
      SdData const&     sd  = sd_data(n);
      SdOps const&      ops = sd_ops(n);
      Assignment        a(sd.chains.size());
      MapSearch         search(idx, sd, {}, a, {}, limits);
      std::function<bool(int, Simplex)> nofilter;
      search.run(nofilter, [&](Assignment const& z) {
        for (int j = 0; j < n; ++j) {
          if (precompose(X, z, ops.degen_op[j], sd) == z) {
            return false;
          }
        }
        std::vector<Simplex> faces;
        for (int i = 0; i <= n && n > 0; ++i) {
          faces.push_back(ex_normalize(X, b.partial(),
                                       precompose(X, z, ops.face_op[i], sd_data(n - 1)),
                                       n - 1));
        }
        int id = static_cast<int>(b.partial().count(n));
        b.add(n, faces, "ex" + std::to_string(n) + ":" + std::to_string(id), codes_key(z));
        check_cap("Ex simplices", ++total, limits.max_simplices);
        return false;
      });
    }
    return std::move(b).build();
  }

  SSetMap ex_map(SSetMap const& f, SSetPtr const& ex_source, SSetPtr const& ex_target) {
    SSetMap m{ex_source, ex_target, {}};
    m.image.resize(ex_source->cap() + 1);
    for (int n = 0; n <= ex_source->cap(); ++n) {
      for (std::size_t id = 0; id < ex_source->count(n); ++id) {
        Assignment z = decode_key(ex_source->key(n, id));
        for (auto& s : z) {
          s = f(s);
        }
        m.image[n].push_back(ex_normalize(*f.target, *ex_target, z, n));
      }
    }
    return m;
  }

  SSetAction ex_action(SSetAction const& a, SSetPtr const& ex_carrier) {
    SSetAction r{a.monoid, ex_carrier, {}};
    for (auto const& f : a.act) {
      r.act.push_back(ex_map(f, ex_carrier, ex_carrier));
    }
    return r;
  }

  SSetMap e_map(SSetPtr const& xp, SSetPtr const& ex_x) {
    FinSSet const& X = *xp;
    SSetMap        m{xp, ex_x, {}};
    m.image.resize(std::min(X.cap(), ex_x->cap()) + 1);
    for (int n = 0; n < static_cast<int>(m.image.size()); ++n) {
      SdData const& sd = sd_data(n);
      for (std::size_t id = 0; id < X.count(n); ++id) {
        Assignment z;
        for (auto const& c : sd.chains) {
          Operator theta;
          for (auto face : c) {
            theta.push_back(31 - std::countl_zero(static_cast<std::uint32_t>(face)));
          }
          z.push_back(X.apply(FinSSet::nondeg(n, id), theta));
        }
        m.image[n].push_back(ex_normalize(X, *ex_x, z, n));
      }
    }
    return m;
  }

  std::size_t count_ex_simplices(FinSSet const& x, int n, Limits const& limits) {
    FaceIndex     idx(x, n);
    SdData const& sd = sd_data(n);
    Assignment    a(sd.chains.size());
    MapSearch     search(idx, sd, {}, a, {}, limits);
    std::size_t   count = 0;
    std::function<bool(int, Simplex)> nofilter;
    search.run(nofilter, [&](Assignment const&) {
      ++count;
      return false;
    });
    return count;
  }

  ////////////////////////////////////////////////////////////////////////
  // Kan fibrations
  ////////////////////////////////////////////////////////////////////////

  KanVerdict is_kan_fibration(SSetMap const& f, int cap, Limits const& limits) {
    FinSSet const& X = *f.source;
    FinSSet const& Y = *f.target;
    KanVerdict     v;
    v.cap = cap;
    if (X.cap() < cap || Y.cap() < cap) {
      throw Error(ErrorKind::bad_index, "Kan check needs both sides up to the cap");
    }
    std::size_t work = 0;
    for (int n = 1; n <= cap; ++n) {
      auto lower = X.all_simplices(n - 1);
      auto top   = X.all_simplices(n);
      auto ytop  = Y.all_simplices(n);
      for (int k = 0; k <= n; ++k) {
        // fillers indexed by their horn faces
        std::unordered_map<std::vector<std::uint64_t>, std::vector<Simplex>, U64VecHash> fill;
        for (auto const& z : top) {
          std::vector<std::uint64_t> key;
          for (int i = 0; i <= n; ++i) {
            if (i != k) {
              key.push_back(X.face(z, i).code());
            }
          }
          fill[key].push_back(z);
        }
        std::vector<Simplex>                    horn(n + 1);
        std::function<bool(int)>                go = [&](int i) -> bool {
          if (i == n + 1) {
            std::vector<std::uint64_t> key;
            for (int j = 0; j <= n; ++j) {
              if (j != k) {
                key.push_back(horn[j].code());
              }
            }
            auto it = fill.find(key);
            for (auto const& y : ytop) {
              bool over = true;
              for (int j = 0; j <= n && over; ++j) {
                if (j != k && !(Y.face(y, j) == f(horn[j]))) {
                  over = false;
                }
              }
              if (!over) {
                continue;
              }
              bool lifted = false;
              if (it != fill.end()) {
                for (auto const& z : it->second) {
                  if (f(z) == y) {
                    lifted = true;
                    break;
                  }
                }
              }
              if (!lifted) {
                v.passed = false;
                v.horn_n = n;
                v.horn_k = k;
                std::string d = "no filler for the horn (";
                for (int j = 0; j <= n; ++j) {
                  if (j != k) {
                    d += (d.back() == '(' ? "" : ", ") + simplex_label(X, horn[j]);
                  }
                }
                v.detail = d + ") over " + simplex_label(Y, y);
                return true;
              }
            }
            return false;
          }
          if (i == k) {
            return go(i + 1);
          }
          for (auto const& x : lower) {
            if (++work > limits.max_candidates * 64) {
              throw_size_cap("horn enumeration", work, limits.max_candidates * 64);
            }
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) {
              if (j == k) {
                continue;
              }
              // d_j x_i = d_{i-1} x_j for j < i
              if (n >= 2 && !(X.face(x, j) == X.face(horn[j], i - 1))) {
                ok = false;
              }
            }
            if (!ok) {
              continue;
            }
            horn[i] = x;
            if (go(i + 1)) {
              return true;
            }
          }
          return false;
        };
        if (go(0)) {
          return v;
        }
      }
    }
    return v;
  }

  KanVerdict is_kan_fibration_ex(SSetMap const& f, int cap, Limits const& limits) {
    FinSSet const& X = *f.source;
    FinSSet const& Y = *f.target;
    KanVerdict     v;
    v.cap = cap;
    if (X.cap() < cap || Y.cap() < cap) {
      throw Error(ErrorKind::bad_index, "Kan check needs both sides up to the cap");
    }
    FaceIndex ix(X, cap), iy(Y, cap);
    std::function<bool(int, Simplex)> nofilter;
    for (int n = 1; n <= cap; ++n) {
      SdData const&     sd   = sd_data(n);
      std::vector<char> none;
      for (int k = 0; k <= n; ++k) {
        std::vector<char> horn = horn_subset(sd, k);
        Assignment        h(sd.chains.size());
        MapSearch         horns(ix, sd, horn, h, none, limits);
        bool failed = horns.run(nofilter, [&](Assignment const& hz) {
          Assignment t(sd.chains.size());
          for (std::size_t c = 0; c < t.size(); ++c) {
            if (horn[c]) {
              t[c] = f(hz[c]);
            }
          }
          MapSearch targets(iy, sd, {}, t, horn, limits);
          return targets.run(nofilter, [&](Assignment const& tz) {
            Assignment z = hz;
            MapSearch  fillers(ix, sd, {}, z, horn, limits);
            std::function<bool(int, Simplex)> over = [&](int c, Simplex s) {
              return f(s) == tz[c];
            };
            bool found = fillers.run(over, [](Assignment const&) { return true; });
            return !found;
          });
        });
        if (failed) {
          v.passed = false;
          v.horn_n = n;
          v.horn_k = k;
          v.detail = "a horn of Ex in dimension " + std::to_string(n)
                     + " has no filler over its target";
          return v;
        }
      }
    }
    return v;
  }

  ////////////////////////////////////////////////////////////////////////
  // Pushouts along injections
  ////////////////////////////////////////////////////////////////////////

  SSetPushout pushout(SSetMap const& i, SSetMap const& c) {
    if (!is_injective(i)) {
      throw Error(ErrorKind::malformed_input, "pushout leg is not injective");
    }
    FinSSet const& A   = *i.source;
    FinSSet const& B   = *i.target;
    FinSSet const& C   = *c.target;
    int            cap = std::min(B.cap(), C.cap());
    // preimage in A of each nondegenerate simplex of B
    std::vector<std::vector<int>> pre(B.cap() + 1);
    for (int n = 0; n <= B.cap(); ++n) {
      pre[n].assign(B.count(n), -1);
      if (n <= A.cap()) {
        for (std::size_t a = 0; a < A.count(n); ++a) {
          pre[n][i.image[n][a].core] = a;
        }
      }
    }
    FinSSet::Builder              b(cap);
    std::vector<std::vector<int>> newid(cap + 1);
    auto map_b = [&](FinSSet const& part, Simplex y) -> Simplex {
      int a = pre[y.core_dim][y.core];
      if (a >= 0) {
        Simplex ca = c.image[y.core_dim][a];
        return y.degen == 0 ? ca : part.apply(ca, surjection_of(y.dim, y.degen));
      }
      y.core = newid[y.core_dim][y.core];
      return y;
    };
    for (int n = 0; n <= cap; ++n) {
      for (std::size_t id = 0; id < C.count(n); ++id) {
        std::vector<Simplex> faces;
        for (int k = 0; k <= n && n > 0; ++k) {
          faces.push_back(C.stored_face(n, id, k));
        }
        b.add(n, faces, C.label(n, id));
      }
      newid[n].assign(B.count(n), -1);
      for (std::size_t id = 0; id < B.count(n); ++id) {
        if (pre[n][id] >= 0) {
          continue;
        }
        std::vector<Simplex> faces;
        for (int k = 0; k <= n && n > 0; ++k) {
          faces.push_back(map_b(b.partial(), B.stored_face(n, id, k)));
        }
        newid[n][id] = b.add(n, faces, "b:" + B.label(n, id));
      }
    }
    SSetPtr     p = std::move(b).build();
    SSetPushout out{p, SSetMap{i.target, p, {}}, SSetMap{c.target, p, {}}};
    out.from_b.image.resize(cap + 1);
    out.from_c.image.resize(cap + 1);
    for (int n = 0; n <= cap; ++n) {
      for (std::size_t id = 0; id < C.count(n); ++id) {
        out.from_c.image[n].push_back(FinSSet::nondeg(n, id));
      }
      for (std::size_t id = 0; id < B.count(n); ++id) {
        out.from_b.image[n].push_back(map_b(*p, FinSSet::nondeg(n, id)));
      }
    }
    return out;
  }

  SSetMap pushout_induced(SSetPushout const& p, SSetMap const& i,
                          SSetMap const& u, SSetMap const& v) {
    FinSSet const& B = *i.target;
    FinSSet const& C = *v.source;
    SSetMap        m{p.set, u.target, {}};
    m.image.resize(p.set->cap() + 1);
    for (int n = 0; n <= p.set->cap(); ++n) {
      m.image[n].resize(p.set->count(n));
      for (std::size_t id = 0; id < C.count(n); ++id) {
        m.image[n][id] = v.image[n][id];
      }
      for (std::size_t id = 0; id < B.count(n); ++id) {
        Simplex s = p.from_b.image[n][id];
        if (s.degen == 0 && static_cast<std::size_t>(s.core) >= C.count(n)) {
          m.image[n][s.core] = u.image[n][id];
        }
      }
    }
    check_map(m);
    return m;
  }

  SSetAction pushout_action(SSetPushout const& p, SSetMap const& i,
                            SSetAction const& b, SSetAction const& c) {
    FinSSet const& B = *i.target;
    FinSSet const& C = *c.carrier;
    SSetAction     r{b.monoid, p.set, {}};
    for (std::size_t m = 0; m < b.act.size(); ++m) {
      SSetMap g{p.set, p.set, {}};
      g.image.resize(p.set->cap() + 1);
      for (int n = 0; n <= p.set->cap(); ++n) {
        g.image[n].resize(p.set->count(n));
        for (std::size_t id = 0; id < C.count(n); ++id) {
          g.image[n][id] = p.from_c(c.act[m].image[n][id]);
        }
        for (std::size_t id = 0; id < B.count(n); ++id) {
          Simplex s = p.from_b.image[n][id];
          if (s.degen == 0 && static_cast<std::size_t>(s.core) >= C.count(n)) {
            g.image[n][s.core] = p.from_b(b.act[m].image[n][id]);
          }
        }
      }
      r.act.push_back(std::move(g));
    }
    check_action(r);
    return r;
  }

}  // namespace gcat
