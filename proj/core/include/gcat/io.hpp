//
// gcat - exact computation with finite categories and group actions
//

// JSON documents and content hashes.
//
// All documents are written in canonical form: object keys sorted, lists
// sorted by name, compact separators. The content hash of a document is the
// SHA-256 of that form, so equal inputs give equal hashes across runs.

#ifndef GCAT_IO_HPP_
#define GCAT_IO_HPP_

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gcat/actions.hpp"
#include "gcat/dwyer.hpp"
#include "gcat/fincat.hpp"
#include "gcat/homology.hpp"
#include "gcat/monoid.hpp"
#include "gcat/sset.hpp"
#include "gcat/weq.hpp"

namespace gcat {

  using Json = nlohmann::json;

  // Unreadable or unwritable files.
  class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  std::string library_version();

  std::string canonical_dump(Json const& j);
  std::string sha256_hex(std::string_view bytes);
  // "sha256:<hex>" of the canonical form.
  std::string content_hash(Json const& j);

  Json read_json_file(std::string const& path);
  void write_text_file(std::string const& path, std::string const& text);

  Json      to_json(FinCat const& c);
  CatPtr    category_from_json(Json const& j, Limits const& limits = {});
  Json      to_json(FinMonoid const& m);
  MonoidPtr monoid_from_json(Json const& j);
  // "trivial", "cyclic:n", "symmetric:n", or nullptr.
  MonoidPtr named_monoid(std::string const& name);

  Json    to_json(Functor const& f);
  Functor functor_from_json(Json const& j, CatPtr source, CatPtr target);
  Json    to_json(CatAction const& a);
  CatAction action_from_json(Json const& j, MonoidPtr m, CatPtr c);

  Json           to_json(OrderedComplex const& k);
  OrderedComplex complex_from_json(Json const& j);
  Json           to_json(FinSSet const& x);

  Json to_json(NatTrans const& a);
  Json to_json(DwyerWitness const& w);
  Json to_json(HomologyGroup const& h);
  Json to_json(std::vector<HomologyGroup> const& hs);
  Json to_json(WeakEqCertificate const& c);
  Json to_json(CertificateTable const& t);

  // A file holding named categories, monoids, functors, actions and
  // complexes. Functors and actions refer to categories and monoids by name
  // or by content hash; monoids may also be given by named_monoid strings.
  struct Bundle {
    Json                                  doc;
    std::map<std::string, CatPtr>         categories;
    std::map<std::string, MonoidPtr>      monoids;
    std::map<std::string, OrderedComplex> complexes;

    [[nodiscard]] CatPtr    category(std::string const& ref) const;
    [[nodiscard]] MonoidPtr monoid(std::string const& ref) const;
    [[nodiscard]] bool      has_functor(std::string const& name) const;
    [[nodiscard]] bool      has_action(std::string const& name) const;
    [[nodiscard]] Functor   functor(std::string const& name) const;
    [[nodiscard]] CatAction action(std::string const& name) const;
    // Content hashes of every category and monoid, by name.
    [[nodiscard]] Json hashes() const;
  };

  Bundle read_bundle(Json const& j, Limits const& limits = {});

  // [{"group": ref, "phi": {h: g}}], relative to a bundle for refs.
  std::vector<GroupPair> pairs_from_json(Json const& j, Bundle const& b, FinMonoid const& g);
  // [{"subgroup": [names in H'], "phi": {h: g}}], for saturation checks.
  std::vector<SubgroupPair> subgroup_pairs_from_json(Json const&      j,
                                                     FinMonoid const& hprime,
                                                     FinMonoid const& g);
  // [[element names]] of the acting monoid.
  std::vector<Subgroup>  family_from_json(Json const& j, FinMonoid const& g);

}  // namespace gcat

#endif  // GCAT_IO_HPP_
