//
// gcat - exact computation with finite categories and group actions
//

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "gcat/actions.hpp"
#include "gcat/homology.hpp"
#include "gcat/monoid.hpp"
#include "gcat/sset.hpp"

using namespace gcat;

namespace {

  using Dense = std::vector<std::vector<std::int64_t>>;

  std::int64_t det(Dense m) {
    // Bareiss elimination, exact over the integers.
    std::size_t n = m.size();
    std::int64_t sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (m[k][k] == 0) {
        std::size_t p = k + 1;
        while (p < n && m[p][k] == 0) {
          ++p;
        }
        if (p == n) {
          return 0;
        }
        std::swap(m[k], m[p]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        }
      }
      prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
  }

  void subsets(int n, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out, int from = 0) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = from; i < n; ++i) {
      cur.push_back(i);
      subsets(n, k, cur, out, i + 1);
      cur.pop_back();
    }
  }

  // Invariant factors from determinantal divisors: d_k is the gcd of all
  // k × k minors and s_k = d_k / d_{k-1}.
  SmithResult smith_by_minors(Dense const& a) {
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    SmithResult r;
    std::int64_t prev = 1;
    for (int k = 1; k <= std::min(rows, cols); ++k) {
      std::vector<std::vector<int>> rs, cs;
      std::vector<int> cur;
      subsets(rows, k, cur, rs);
      subsets(cols, k, cur, cs);
      std::int64_t g = 0;
      for (auto const& ri : rs) {
        for (auto const& ci : cs) {
          Dense m(k, std::vector<std::int64_t>(k));
          for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
              m[i][j] = a[ri[i]][ci[j]];
            }
          }
          g = std::gcd(g, det(m));
        }
      }
      if (g == 0) {
        break;
      }
      r.rank = k;
      std::int64_t s = g / prev;
      if (s > 1) {
        r.invariants.push_back(s);
      }
      prev = g;
    }
    return r;
  }

  SparseMatrix sparse(Dense const& a, std::size_t cols) {
    SparseMatrix m;
    m.rows = a.size();
    m.cols.resize(cols);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (a[i][j] != 0) {
          m.cols[j].emplace_back(static_cast<int>(i), a[i][j]);
        }
      }
    }
    return m;
  }

  HomologyGroup z(std::size_t betti = 1) {
    return HomologyGroup{betti, {}};
  }

  HomologyGroup zero() {
    return HomologyGroup{};
  }

}  // namespace

TEST_CASE("Smith normal form against determinantal divisors", "[homology][property]") {
  std::mt19937_64 rng(314);
  for (int round = 0; round < 300; ++round) {
    std::size_t rows = 1 + rng() % 4;
    std::size_t cols = 1 + rng() % 4;
    Dense a(rows, std::vector<std::int64_t>(cols));
    for (auto& row : a) {
      for (auto& x : row) {
        x = static_cast<std::int64_t>(rng() % 9) - 4;
        if (rng() % 3 == 0) {
          x = 0;
        }
      }
    }
    auto expect = smith_by_minors(a);
    auto got    = smith(sparse(a, cols));
    REQUIRE(got.rank == expect.rank);
    REQUIRE(got.invariants == expect.invariants);
  }
}

TEST_CASE("Smith normal form examples", "[homology]") {
  Dense a = {{2, 0}, {0, 3}};
  auto r  = smith(sparse(a, 2));
  REQUIRE(r.rank == 2);
  REQUIRE(r.invariants == std::vector<std::int64_t>{6});
  Dense b = {{2, 4}, {6, 8}};
  REQUIRE(smith(sparse(b, 2)).invariants == std::vector<std::int64_t>{2, 4});
}

TEST_CASE("homology of simplices and spheres", "[homology]") {
  for (int n = 0; n <= 3; ++n) {
    auto h = homology(*standard_simplex(n, 4));
    REQUIRE(h[0] == z());
    for (std::size_t d = 1; d < h.size(); ++d) {
      REQUIRE(h[d] == zero());
    }
  }
  auto s0 = homology(*standard_boundary(1, 2));
  REQUIRE(s0[0] == z(2));
  for (int n = 2; n <= 4; ++n) {
    auto h = homology(*standard_boundary(n, n + 1));
    for (int d = 0; d <= n; ++d) {
      bool nonzero = d == 0 || d == n - 1;
      REQUIRE(h[d] == (nonzero ? z() : zero()));
    }
  }
  auto horn = homology(*standard_horn(3, 1, 4));
  REQUIRE(horn[0] == z());
  REQUIRE(horn[1] == zero());
  REQUIRE(horn[2] == zero());
}

TEST_CASE("torsion in the projective plane", "[homology]") {
  // six-vertex triangulation
  std::vector<std::vector<int>> tri = {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                                       {2, 3, 5}, {3, 4, 6}, {2, 4, 5}, {3, 5, 6}, {2, 4, 6}};
  for (auto& t : tri) {
    for (auto& v : t) {
      --v;
    }
    std::sort(t.begin(), t.end());
  }
  auto h = homology(*complex_sset(make_complex(6, tri), 3));
  REQUIRE(h[0] == z());
  REQUIRE(h[1] == HomologyGroup{0, {2}});
  REQUIRE(h[2] == zero());
  REQUIRE(to_string(h[1]) == "Z/2");
}

TEST_CASE("nerves of groupoids", "[homology]") {
  auto e = nerve(chaotic_left_translation(cyclic_group(2)).carrier, 4);
  auto h = homology(*e);
  REQUIRE(h.size() == 4);
  REQUIRE(h[0] == z());
  for (int d = 1; d <= 3; ++d) {
    REQUIRE(h[d] == zero());
  }
  // BZ/2 has the homology of RP^∞ below the top degree.
  auto b = homology(*nerve(delooping(*cyclic_group(2)), 4));
  REQUIRE(b[0] == z());
  REQUIRE(b[1] == HomologyGroup{0, {2}});
  REQUIRE(b[2] == zero());
  REQUIRE(b[3] == HomologyGroup{0, {2}});
}

TEST_CASE("Euler characteristic", "[homology][property]") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 40; ++round) {
    int n = 3 + static_cast<int>(rng() % 4);
    std::vector<std::vector<int>> gens;
    for (int g = 0; g < 4; ++g) {
      std::vector<int> face;
      for (int v = 0; v < n; ++v) {
        if (rng() % 3 == 0) {
          face.push_back(v);
        }
      }
      if (!face.empty() && face.size() <= 3) {
        gens.push_back(face);
      }
    }
    auto k = make_complex(n, gens);
    auto h = homology(*complex_sset(k, 4));
    long chi_faces = 0, chi_h = 0;
    for (auto const& f : k.faces) {
      chi_faces += (f.size() % 2 == 1) ? 1 : -1;
    }
    for (std::size_t d = 0; d < h.size(); ++d) {
      chi_h += (d % 2 == 0 ? 1 : -1) * static_cast<long>(h[d].betti);
    }
    REQUIRE(chi_faces == chi_h);
    // π₀ matches H₀
    auto comp = components(*complex_sset(k, 4));
    std::set<int> labels(comp.begin(), comp.end());
    REQUIRE(labels.size() == h[0].betti);
  }
}

TEST_CASE("homology isomorphisms", "[homology]") {
  auto bd  = complex_sset(boundary_complex(2), 3);
  auto d2  = complex_sset(simplex_complex(2), 3);
  auto inc = complex_inclusion(bd, d2);
  auto v   = homology_isomorphism(inc);
  REQUIRE_FALSE(v.iso);
  REQUIRE(v.degree == 1);

  auto id = homology_isomorphism(identity_map(d2));
  REQUIRE(id.iso);

  auto e = nerve(chaotic_category({"a", "b"}), 3);
  REQUIRE(homology_isomorphism(to_point(e)).iso);
}
