//
// gcat - exact computation with finite categories and group actions
//

// Seeded generators for small test inputs. The mix leans towards posets and
// chaotic categories, where the expected answers are known exactly.

#ifndef GCAT_CORPUS_HPP_
#define GCAT_CORPUS_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gcat/actions.hpp"
#include "gcat/fincat.hpp"
#include "gcat/monoid.hpp"
#include "gcat/sset.hpp"

namespace gcat {

  using Rng = std::mt19937_64;

  // Objects prefix0..prefix(n-1), i < j related with the given probability,
  // then transitively closed. Index order is a linear extension.
  CatPtr random_poset(Rng& rng, int n, double density, std::string const& prefix = "x");

  // A random order-preserving map between posets (constant if the search
  // finds nothing better).
  Functor random_monotone(Rng& rng, CatPtr const& a, CatPtr const& c);

  // The functor between posets with the given object map.
  Functor poset_functor(CatPtr const& a, CatPtr const& c, std::vector<ObjId> objects);

  struct DwyerSpan {
    std::string name;
    Functor     i;  // A → B, a Dwyer map
    Functor     c;  // A → C
  };

  // [1] ← 𝟙 → [1] and the collapse of the sieve {0, 1} ⊂ [2] to a point.
  std::vector<DwyerSpan> curated_spans();
  // Spans whose left leg admits a Dwyer witness, B with at most max_objects
  // objects. Rejection sampling, so the result is a function of the seed.
  std::vector<DwyerSpan> dwyer_spans(std::uint64_t seed, int count, int max_objects = 12);

  struct EquivariantSpan {
    std::string name;
    Functor     i;
    Functor     c;
    CatAction   a;
    CatAction   b;
    CatAction   cact;
  };

  // G ∈ {Z/2, Z/3, S3}, B = S × P for an orbit-type factor S and a poset P.
  std::vector<EquivariantSpan> equivariant_spans(std::uint64_t seed, int count);

  struct GCategory {
    std::string name;
    CatAction   action;
  };

  // Posets with trivial action, chaotic categories with permutation
  // actions, coset categories and their products with small posets.
  std::vector<GCategory> g_categories(std::uint64_t seed, int count);
  std::vector<CatPtr>    posets(std::uint64_t seed, int count, int max_objects = 6);

  struct SSetCase {
    std::string               name;
    SSetPtr                   set;
    std::optional<SSetAction> action;
  };

  // Standard cells, nerves of small posets and chaotic categories, with the
  // evident actions where there is one. Everything at the given cap.
  std::vector<SSetCase> sset_corpus(std::uint64_t seed, int count, int cap);

}  // namespace gcat

#endif  // GCAT_CORPUS_HPP_
