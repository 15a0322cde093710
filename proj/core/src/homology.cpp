//
// gcat - exact computation with finite categories and group actions
//

#include "gcat/homology.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace gcat {

  namespace {

    std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
      std::int64_t r;
      if (__builtin_mul_overflow(a, b, &r)) {
        throw Error(ErrorKind::size_cap_exceeded, "integer overflow in Smith normal form");
      }
      return r;
    }

    std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
      std::int64_t r;
      if (__builtin_sub_overflow(a, b, &r)) {
        throw Error(ErrorKind::size_cap_exceeded, "integer overflow in Smith normal form");
      }
      return r;
    }

    using Row = std::map<int, std::int64_t>;

    // Removes unit pivots; what survives goes to the dense phase.
    std::size_t eliminate_units(std::vector<Row>& rows, std::vector<std::set<int>>& cols) {
      std::size_t rank = 0;
      bool        progress = true;
      while (progress) {
        progress = false;
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (rows[r].empty()) {
            continue;
          }
          int best = -1;
          for (auto const& [c, v] : rows[r]) {
            if ((v == 1 || v == -1)
                && (best < 0 || cols[c].size() < cols[best].size())) {
              best = c;
            }
          }
          if (best < 0) {
            continue;
          }
          std::int64_t u     = rows[r].at(best);
          Row          pivot = rows[r];
          std::vector<int> others(cols[best].begin(), cols[best].end());
          for (int r2 : others) {
            if (r2 == static_cast<int>(r)) {
              continue;
            }
            std::int64_t factor = checked_mul(rows[r2].at(best), u);
            for (auto const& [c, v] : pivot) {
              auto         it = rows[r2].find(c);
              std::int64_t nv = checked_sub(it == rows[r2].end() ? 0 : it->second,
                                            checked_mul(factor, v));
              if (nv == 0) {
                if (it != rows[r2].end()) {
                  rows[r2].erase(it);
                  cols[c].erase(r2);
                }
              } else if (it == rows[r2].end()) {
                rows[r2].emplace(c, nv);
                cols[c].insert(r2);
              } else {
                it->second = nv;
              }
            }
          }
          for (auto const& [c, v] : pivot) {
            cols[c].erase(r);
          }
          rows[r].clear();
          ++rank;
          progress = true;
        }
      }
      return rank;
    }

    // Invariant factors of a small dense matrix, with divisibility enforced.
    void dense_smith(std::vector<std::vector<std::int64_t>> a, SmithResult& out) {
      std::size_t m = a.size();
      std::size_t n = m ? a[0].size() : 0;
      std::vector<std::int64_t> diag;
      for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
          // smallest nonzero entry in the lower-right block
          std::size_t pr = m, pc = n;
          for (std::size_t i = t; i < m; ++i) {
            for (std::size_t j = t; j < n; ++j) {
              if (a[i][j] != 0
                  && (pr == m || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) {
                pr = i;
                pc = j;
              }
            }
          }
          if (pr == m) {
            goto done;
          }
          std::swap(a[t], a[pr]);
          for (auto& row : a) {
            std::swap(row[t], row[pc]);
          }
          std::int64_t p     = a[t][t];
          bool         clean = true;
          for (std::size_t i = t + 1; i < m; ++i) {
            std::int64_t q = a[i][t] / p;
            if (q != 0) {
              for (std::size_t j = t; j < n; ++j) {
                a[i][j] = checked_sub(a[i][j], checked_mul(q, a[t][j]));
              }
            }
            clean = clean && a[i][t] == 0;
          }
          for (std::size_t j = t + 1; j < n; ++j) {
            std::int64_t q = a[t][j] / p;
            if (q != 0) {
              for (std::size_t i = t; i < m; ++i) {
                a[i][j] = checked_sub(a[i][j], checked_mul(q, a[i][t]));
              }
            }
            clean = clean && a[t][j] == 0;
          }
          if (!clean) {
            continue;
          }
          // p must divide the rest; otherwise fold a bad row in and retry
          std::size_t bad = m;
          for (std::size_t i = t + 1; i < m && bad == m; ++i) {
            for (std::size_t j = t + 1; j < n; ++j) {
              if (a[i][j] % p != 0) {
                bad = i;
                break;
              }
            }
          }
          if (bad == m) {
            diag.push_back(std::llabs(p));
            break;
          }
          for (std::size_t j = t; j < n; ++j) {
            a[t][j] += a[bad][j];
          }
        }
      }
    done:
      out.rank += diag.size();
      for (auto d : diag) {
        if (d > 1) {
          out.invariants.push_back(d);
        }
      }
      std::sort(out.invariants.begin(), out.invariants.end());
    }

  }  // namespace

  SmithResult smith(SparseMatrix const& mat) {
    std::vector<Row>           rows(mat.rows);
    std::vector<std::set<int>> cols(mat.cols.size());
    for (std::size_t c = 0; c < mat.cols.size(); ++c) {
      for (auto const& [r, v] : mat.cols[c]) {
        if (v == 0) {
          continue;
        }
        rows[r][c] += v;
        if (rows[r][c] == 0) {
          rows[r].erase(c);
          cols[c].erase(r);
        } else {
          cols[c].insert(r);
        }
      }
    }
    SmithResult out;
    out.rank = eliminate_units(rows, cols);
    std::vector<int> live_rows, live_cols;
    std::map<int, int> col_pos;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!rows[r].empty()) {
        live_rows.push_back(r);
        for (auto const& [c, v] : rows[r]) {
          col_pos.emplace(c, 0);
        }
      }
    }
    if (live_rows.empty()) {
      return out;
    }
    if (live_rows.size() * col_pos.size() > 64u * 1024 * 1024) {
      throw_size_cap("dense Smith block entries", live_rows.size() * col_pos.size(),
                     64u * 1024 * 1024);
    }
    int k = 0;
    for (auto& [c, p] : col_pos) {
      p = k++;
    }
    std::vector<std::vector<std::int64_t>> dense(
        live_rows.size(), std::vector<std::int64_t>(col_pos.size(), 0));
    for (std::size_t i = 0; i < live_rows.size(); ++i) {
      for (auto const& [c, v] : rows[live_rows[i]]) {
        dense[i][col_pos[c]] = v;
      }
    }
    dense_smith(std::move(dense), out);
    return out;
  }

  std::string to_string(HomologyGroup const& h) {
    std::string s;
    if (h.betti == 1) {
      s = "Z";
    } else if (h.betti > 1) {
      s = "Z^" + std::to_string(h.betti);
    }
    for (auto t : h.torsion) {
      s += (s.empty() ? "" : " + ") + ("Z/" + std::to_string(t));
    }
    return s.empty() ? "0" : s;
  }

  namespace {
    // Boundary column of a nondegenerate simplex in normalized chains.
    SparseColumn boundary_column(FinSSet const& x, int n, int id) {
      std::map<int, std::int64_t> acc;
      for (int i = 0; i <= n; ++i) {
        Simplex f = x.stored_face(n, id, i);
        if (f.degen == 0) {
          acc[f.core] += (i % 2 == 0) ? 1 : -1;
        }
      }
      SparseColumn col;
      for (auto const& [r, v] : acc) {
        if (v != 0) {
          col.emplace_back(r, v);
        }
      }
      return col;
    }
  }  // namespace

  ChainComplex normalized_chains(FinSSet const& x) {
    ChainComplex c;
    for (int n = 0; n <= x.cap(); ++n) {
      c.dims.push_back(x.count(n));
      SparseMatrix m;
      m.rows = n > 0 ? x.count(n - 1) : 0;
      for (std::size_t id = 0; id < x.count(n); ++id) {
        m.cols.push_back(n > 0 ? boundary_column(x, n, id) : SparseColumn{});
      }
      c.boundary.push_back(std::move(m));
    }
    return c;
  }

  ChainComplex mapping_cone(SSetMap const& f) {
    FinSSet const& X   = *f.source;
    FinSSet const& Y   = *f.target;
    int            cap = std::min(X.cap() + 1, Y.cap());
    auto           dim_x = [&](int n) -> std::size_t {
      return n >= 0 && n <= X.cap() ? X.count(n) : 0;
    };
    ChainComplex c;
    for (int n = 0; n <= cap; ++n) {
      std::size_t xs = dim_x(n - 1);
      c.dims.push_back(xs + Y.count(n));
      SparseMatrix m;
      m.rows = n > 0 ? dim_x(n - 2) + Y.count(n - 1) : 0;
      std::size_t y_off = n > 0 ? dim_x(n - 2) : 0;
      // x-part: (-∂x, f(x))
      for (std::size_t id = 0; id < xs; ++id) {
        SparseColumn col;
        if (n - 1 > 0) {
          for (auto [r, v] : boundary_column(X, n - 1, id)) {
            col.emplace_back(r, -v);
          }
        }
        Simplex fx = f.image[n - 1][id];
        if (fx.degen == 0) {
          col.emplace_back(y_off + fx.core, 1);
        }
        m.cols.push_back(std::move(col));
      }
      for (std::size_t id = 0; id < Y.count(n); ++id) {
        SparseColumn col;
        if (n > 0) {
          for (auto [r, v] : boundary_column(Y, n, id)) {
            col.emplace_back(y_off + r, v);
          }
        }
        m.cols.push_back(std::move(col));
      }
      c.boundary.push_back(std::move(m));
    }
    return c;
  }

  std::vector<HomologyGroup> homology(ChainComplex const& c, int top) {
    std::vector<SmithResult> s;
    for (int n = 0; n <= top + 1 && n < static_cast<int>(c.boundary.size()); ++n) {
      s.push_back(n == 0 ? SmithResult{} : smith(c.boundary[n]));
    }
    std::vector<HomologyGroup> out;
    for (int n = 0; n <= top; ++n) {
      if (n + 1 >= static_cast<int>(s.size())) {
        throw Error(ErrorKind::bad_index,
                    "homology in degree " + std::to_string(n)
                        + " needs chains one dimension higher");
      }
      HomologyGroup h;
      h.betti   = c.dims[n] - s[n].rank - s[n + 1].rank;
      h.torsion = s[n + 1].invariants;
      out.push_back(std::move(h));
    }
    return out;
  }

  std::vector<HomologyGroup> homology(FinSSet const& x) {
    if (x.cap() == 0) {
      return {};
    }
    return homology(normalized_chains(x), x.cap() - 1);
  }

  MapHomologyVerdict homology_isomorphism(SSetMap const& f) {
    MapHomologyVerdict v;
    int                cap = std::min(f.source->cap(), f.target->cap());
    if (cap == 0) {
      v.detail = "nothing to compare below dimension 1";
      return v;
    }
    ChainComplex cx = normalized_chains(*f.source);
    ChainComplex cy = normalized_chains(*f.target);
    cx.dims.resize(cap + 1);
    cx.boundary.resize(cap + 1);
    cy.dims.resize(cap + 1);
    cy.boundary.resize(cap + 1);
    v.source = homology(cx, cap - 1);
    v.target = homology(cy, cap - 1);
    for (int n = 0; n < cap; ++n) {
      if (!(v.source[n] == v.target[n])) {
        v.iso    = false;
        v.degree = n;
        v.detail = "H_" + std::to_string(n) + ": " + to_string(v.source[n]) + " vs "
                   + to_string(v.target[n]);
        return v;
      }
    }
    ChainComplex cone = mapping_cone(f);
    cone.dims.resize(cap + 1);
    cone.boundary.resize(cap + 1);
    auto hc = homology(cone, cap - 1);
    for (int n = 0; n < cap; ++n) {
      if (!(hc[n] == HomologyGroup{})) {
        v.iso    = false;
        v.degree = n;
        v.detail = "mapping cone has H_" + std::to_string(n) + " = " + to_string(hc[n])
                   + ": the induced map fails to be onto in degree " + std::to_string(n)
                   + " or one-to-one in degree " + std::to_string(n - 1);
        return v;
      }
    }
    return v;
  }

}  // namespace gcat
