//
// gcat - exact computation with finite categories and group actions
//

#include "gcat/io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <openssl/evp.h>

namespace gcat {

  namespace {

    [[noreturn]] void bad(std::string const& what) {
      throw Error(ErrorKind::malformed_input, what);
    }

    Json const& field(Json const& j, char const* key) {
      if (!j.is_object() || !j.contains(key)) {
        bad(std::string("missing field '") + key + "'");
      }
      return j.at(key);
    }

    std::string str(Json const& j) {
      if (!j.is_string()) {
        bad("expected a string, got " + j.dump());
      }
      return j.get<std::string>();
    }

    // [a, b, c] or {"id": a, "src": b, "dst": c}
    RawMorphism raw_morphism(Json const& j) {
      if (j.is_array() && j.size() == 3) {
        return {str(j[0]), str(j[1]), str(j[2])};
      }
      return {str(field(j, "id")), str(field(j, "src")), str(field(j, "dst"))};
    }

    std::vector<int> sorted_order(std::vector<std::string> const& names) {
      std::vector<int> idx(names.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return names[a] < names[b]; });
      return idx;
    }

    Json name_map(FinCat const& s, FinCat const& t, std::vector<ObjId> const& objs,
                  std::vector<MorId> const& mors, Json& morphisms) {
      Json o = Json::object();
      for (std::size_t x = 0; x < objs.size(); ++x) {
        o[s.object_name(x)] = t.object_name(objs[x]);
      }
      morphisms = Json::object();
      for (std::size_t m = 0; m < mors.size(); ++m) {
        morphisms[s.morphism_name(m)] = t.morphism_name(mors[m]);
      }
      return o;
    }

    std::pair<std::vector<ObjId>, std::vector<MorId>>
    maps_from_json(Json const& j, FinCat const& s, FinCat const& t) {
      std::vector<ObjId> objs(s.num_objects(), kNone);
      std::vector<MorId> mors(s.num_morphisms(), kNone);
      Json const&        jo = field(j, "objects");
      Json const&        jm = field(j, "morphisms");
      for (auto const& [k, v] : jo.items()) {
        auto x = s.find_object(k);
        auto y = t.find_object(str(v));
        if (!x || !y) {
          throw Error(ErrorKind::dangling_reference, "unknown object in map: " + k + " -> " + v.dump());
        }
        objs[*x] = *y;
      }
      for (auto const& [k, v] : jm.items()) {
        auto x = s.find_morphism(k);
        auto y = t.find_morphism(str(v));
        if (!x || !y) {
          throw Error(ErrorKind::dangling_reference,
                      "unknown morphism in map: " + k + " -> " + v.dump());
        }
        mors[*x] = *y;
      }
      for (std::size_t x = 0; x < objs.size(); ++x) {
        if (objs[x] == kNone) {
          bad("map misses object '" + s.object_name(x) + "'");
        }
      }
      for (std::size_t m = 0; m < mors.size(); ++m) {
        if (mors[m] == kNone) {
          bad("map misses morphism '" + s.morphism_name(m) + "'");
        }
      }
      return {objs, mors};
    }

  }  // namespace

  std::string library_version() {
    return GCAT_VERSION;
  }

  std::string canonical_dump(Json const& j) {
    return j.dump(-1, ' ', false, Json::error_handler_t::strict);
  }

  std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int  len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("SHA-256 failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string           out;
    for (unsigned i = 0; i < len; ++i) {
      out += hex[digest[i] >> 4];
      out += hex[digest[i] & 15];
    }
    return out;
  }

  std::string content_hash(Json const& j) {
    return "sha256:" + sha256_hex(canonical_dump(j));
  }

  Json read_json_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw IoError("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
      throw IoError("cannot read '" + path + "'");
    }
    try {
      return Json::parse(ss.str());
    } catch (Json::parse_error const& e) {
      bad("'" + path + "' is not valid JSON: " + e.what());
    }
  }

  void write_text_file(std::string const& path, std::string const& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush()) {
      throw IoError("cannot write '" + path + "'");
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Categories and monoids
  ////////////////////////////////////////////////////////////////////////

  Json to_json(FinCat const& c) {
    RawCategory r = c.to_raw();
    Json        j;
    j["objects"]   = r.objects;
    j["morphisms"] = Json::array();
    for (auto const& m : r.morphisms) {
      j["morphisms"].push_back({m.id, m.source, m.target});
    }
    j["identity"] = Json::array();
    for (auto const& [x, f] : r.identity) {
      j["identity"].push_back({x, f});
    }
    j["compose"] = Json::array();
    for (auto const& t : r.compose) {
      j["compose"].push_back({t[0], t[1], t[2]});
    }
    return j;
  }

  CatPtr category_from_json(Json const& j, Limits const& limits) {
    RawCategory r;
    for (auto const& x : field(j, "objects")) {
      r.objects.push_back(str(x));
    }
    for (auto const& m : field(j, "morphisms")) {
      r.morphisms.push_back(raw_morphism(m));
    }
    Json const& ids = field(j, "identity");
    if (ids.is_object()) {
      for (auto const& [x, f] : ids.items()) {
        r.identity.emplace_back(x, str(f));
      }
    } else {
      for (auto const& p : ids) {
        if (!p.is_array() || p.size() != 2) {
          bad("identity entries are [object, morphism]");
        }
        r.identity.emplace_back(str(p[0]), str(p[1]));
      }
    }
    for (auto const& t : field(j, "compose")) {
      if (!t.is_array() || t.size() != 3) {
        bad("compose entries are [g, f, g∘f]");
      }
      r.compose.push_back({str(t[0]), str(t[1]), str(t[2])});
    }
    return std::make_shared<FinCat const>(FinCat::validate(r, limits));
  }

  Json to_json(FinMonoid const& m) {
    auto order = sorted_order(m.names());
    Json j;
    j["elements"] = Json::array();
    for (int a : order) {
      j["elements"].push_back(m.name(a));
    }
    j["table"] = Json::array();
    for (int a : order) {
      Json row = Json::array();
      for (int b : order) {
        row.push_back(m.name(m.mul(a, b)));
      }
      j["table"].push_back(std::move(row));
    }
    j["unit"] = m.name(m.unit());
    return j;
  }

  MonoidPtr monoid_from_json(Json const& j) {
    if (j.is_string()) {
      if (auto m = named_monoid(j.get<std::string>())) {
        return m;
      }
      bad("unknown monoid '" + j.get<std::string>() + "'");
    }
    std::vector<std::string> names;
    for (auto const& x : field(j, "elements")) {
      names.push_back(str(x));
    }
    auto order = sorted_order(names);
    std::vector<std::string> sorted;
    std::map<std::string, int> index;
    for (int a : order) {
      index[names[a]] = sorted.size();
      sorted.push_back(names[a]);
    }
    auto lookup = [&](Json const& x) {
      auto it = index.find(str(x));
      if (it == index.end()) {
        throw Error(ErrorKind::dangling_reference, "unknown element " + x.dump());
      }
      return it->second;
    };
    Json const& rows = field(j, "table");
    if (!rows.is_array() || rows.size() != names.size()) {
      bad("the table needs one row per element");
    }
    std::vector<int> table(names.size() * names.size());
    for (std::size_t a = 0; a < names.size(); ++a) {
      if (!rows[a].is_array() || rows[a].size() != names.size()) {
        bad("the table needs one entry per element in each row");
      }
      for (std::size_t b = 0; b < names.size(); ++b) {
        table[index[names[a]] * names.size() + index[names[b]]] = lookup(rows[a][b]);
      }
    }
    return std::make_shared<FinMonoid const>(
        FinMonoid::make(std::move(sorted), std::move(table), lookup(field(j, "unit"))));
  }

  MonoidPtr named_monoid(std::string const& name) {
    if (name == "trivial") {
      return trivial_group();
    }
    auto colon = name.find(':');
    if (colon == std::string::npos) {
      return nullptr;
    }
    std::string kind = name.substr(0, colon);
    int         n    = 0;
    try {
      n = std::stoi(name.substr(colon + 1));
    } catch (std::exception const&) {
      return nullptr;
    }
    if (kind == "cyclic" && n >= 1 && n <= 64) {
      return cyclic_group(n);
    }
    if (kind == "symmetric" && n >= 1 && n <= 5) {
      return symmetric_group(n);
    }
    return nullptr;
  }

  Json to_json(Functor const& f) {
    Json j;
    j["source"]  = content_hash(to_json(*f.source));
    j["target"]  = content_hash(to_json(*f.target));
    Json mors;
    j["objects"]   = name_map(*f.source, *f.target, f.objects, f.morphisms, mors);
    j["morphisms"] = std::move(mors);
    return j;
  }

  Functor functor_from_json(Json const& j, CatPtr source, CatPtr target) {
    auto [o, m] = maps_from_json(j, *source, *target);
    return make_functor(std::move(source), std::move(target), std::move(o), std::move(m));
  }

  Json to_json(CatAction const& a) {
    Json j;
    j["monoid"]   = content_hash(to_json(*a.monoid));
    j["category"] = content_hash(to_json(*a.carrier));
    j["act"]      = Json::object();
    for (std::size_t g = 0; g < a.act.size(); ++g) {
      Json mors;
      Json e;
      e["objects"]   = name_map(*a.carrier, *a.carrier, a.act[g].objects, a.act[g].morphisms, mors);
      e["morphisms"] = std::move(mors);
      j["act"][a.monoid->name(g)] = std::move(e);
    }
    return j;
  }

  CatAction action_from_json(Json const& j, MonoidPtr m, CatPtr c) {
    Json const& act = field(j, "act");
    CatAction   a{m, c, {}};
    for (std::size_t g = 0; g < m->size(); ++g) {
      if (!act.contains(m->name(g))) {
        bad("action misses element '" + m->name(g) + "'");
      }
      auto [o, f] = maps_from_json(act.at(m->name(g)), *c, *c);
      a.act.push_back(make_functor(c, c, std::move(o), std::move(f)));
    }
    check_action(a);
    return a;
  }

  ////////////////////////////////////////////////////////////////////////
  // Complexes and simplicial sets
  ////////////////////////////////////////////////////////////////////////

  Json to_json(OrderedComplex const& k) {
    Json j;
    j["vertices"] = Json::array();
    for (int v = 0; v < k.num_vertices; ++v) {
      j["vertices"].push_back(k.vertex_names.empty() ? std::to_string(v) : k.vertex_names[v]);
    }
    j["faces"] = k.faces;
    return j;
  }

  OrderedComplex complex_from_json(Json const& j) {
    Json const& vs = field(j, "vertices");
    std::vector<std::string> names;
    if (vs.is_number_unsigned()) {
      for (int v = 0; v < vs.get<int>(); ++v) {
        names.push_back(std::to_string(v));
      }
    } else if (vs.is_array()) {
      for (auto const& v : vs) {
        names.push_back(str(v));
      }
    } else {
      bad("vertices is a count or a list of names");
    }
    std::vector<std::vector<int>> gens;
    for (auto const& f : field(j, "faces")) {
      std::vector<int> face;
      for (auto const& v : f) {
        if (!v.is_number_integer()) {
          bad("faces list vertex indices");
        }
        int x = v.get<int>();
        if (x < 0 || x >= static_cast<int>(names.size())) {
          throw Error(ErrorKind::dangling_reference, "vertex index out of range");
        }
        face.push_back(x);
      }
      gens.push_back(std::move(face));
    }
    OrderedComplex k = make_complex(names.size(), gens);
    k.vertex_names   = std::move(names);
    return k;
  }

  Json to_json(FinSSet const& x) {
    Json j;
    j["cap"]  = x.cap();
    j["dims"] = Json::array();
    for (int n = 0; n <= x.cap(); ++n) {
      Json dim = Json::array();
      for (std::size_t id = 0; id < x.count(n); ++id) {
        Json s;
        s["label"] = x.label(n, id);
        s["faces"] = Json::array();
        if (n > 0) {
          for (int i = 0; i <= n; ++i) {
            Simplex f    = x.stored_face(n, id, i);
            Json    word = Json::array();
            for (int b = 0; b < 16; ++b) {
              if (f.degen >> b & 1) {
                word.push_back(b);
              }
            }
            s["faces"].push_back({f.core, f.core_dim, word});
          }
        }
        dim.push_back(std::move(s));
      }
      j["dims"].push_back(std::move(dim));
    }
    return j;
  }

  ////////////////////////////////////////////////////////////////////////
  // Witnesses and certificates
  ////////////////////////////////////////////////////////////////////////

  Json to_json(NatTrans const& a) {
    FinCat const& s = *a.source.source;
    FinCat const& t = *a.source.target;
    Json          j = Json::object();
    for (std::size_t x = 0; x < a.components.size(); ++x) {
      j[s.object_name(x)] = t.morphism_name(a.components[x]);
    }
    return j;
  }

  Json to_json(DwyerWitness const& w) {
    Json j;
    j["source"]  = content_hash(to_json(*w.i.source));
    j["target"]  = content_hash(to_json(*w.i.target));
    j["cosieve"] = Json::array();
    for (ObjId y : w.cosieve.inclusion.objects) {
      j["cosieve"].push_back(w.i.target->object_name(y));
    }
    std::sort(j["cosieve"].begin(), j["cosieve"].end());
    j["f"]      = to_json(w.f);
    j["r"]      = to_json(w.r);
    j["unit"]   = to_json(w.unit);
    j["counit"] = to_json(w.counit);
    return j;
  }

  Json to_json(HomologyGroup const& h) {
    return to_string(h);
  }

  Json to_json(std::vector<HomologyGroup> const& hs) {
    Json j = Json::array();
    for (auto const& h : hs) {
      j.push_back(to_json(h));
    }
    return j;
  }

  Json to_json(WeakEqCertificate const& c) {
    Json j;
    j["kind"]   = to_string(c.kind);
    j["passed"] = c.passed;
    j["cap"]    = c.cap;
    if (c.kind == CertKind::necessary) {
      j["pi0_bijective"]   = c.pi0_bijective;
      j["source_homology"] = to_json(c.source_homology);
      j["target_homology"] = to_json(c.target_homology);
      if (c.failed_degree >= 0) {
        j["failed_degree"] = c.failed_degree;
      }
    }
    if (c.witness) {
      // the functor is fully faithful, so the inverse on morphisms is
      // determined by its object map and the counit
      FinCat const& t = *c.witness->inverse.source;
      FinCat const& s = *c.witness->inverse.target;
      Json          inv = Json::object();
      for (std::size_t y = 0; y < t.num_objects(); ++y) {
        inv[t.object_name(y)] = s.object_name(c.witness->inverse.obj(y));
      }
      j["witness"] = {{"inverse_objects", std::move(inv)},
                      {"unit", to_json(c.witness->unit)},
                      {"counit", to_json(c.witness->counit)}};
    }
    if (!c.detail.empty()) {
      j["detail"] = c.detail;
    }
    return j;
  }

  Json to_json(CertificateTable const& t) {
    Json j;
    j["passed"] = t.passed;
    j["scope"]  = t.scope;
    j["rows"]   = Json::array();
    for (auto const& r : t.rows) {
      j["rows"].push_back({{"label", r.label}, {"certificate", to_json(r.cert)}});
    }
    return j;
  }

  ////////////////////////////////////////////////////////////////////////
  // Bundles
  ////////////////////////////////////////////////////////////////////////

  CatPtr Bundle::category(std::string const& ref) const {
    if (auto it = categories.find(ref); it != categories.end()) {
      return it->second;
    }
    for (auto const& [name, c] : categories) {
      if (content_hash(to_json(*c)) == ref) {
        return c;
      }
    }
    throw Error(ErrorKind::dangling_reference, "no category '" + ref + "' in the input");
  }

  MonoidPtr Bundle::monoid(std::string const& ref) const {
    if (auto it = monoids.find(ref); it != monoids.end()) {
      return it->second;
    }
    for (auto const& [name, m] : monoids) {
      if (content_hash(to_json(*m)) == ref) {
        return m;
      }
    }
    if (auto m = named_monoid(ref)) {
      return m;
    }
    throw Error(ErrorKind::dangling_reference, "no monoid '" + ref + "' in the input");
  }

  bool Bundle::has_functor(std::string const& name) const {
    return doc.contains("functors") && doc["functors"].contains(name);
  }

  bool Bundle::has_action(std::string const& name) const {
    return doc.contains("actions") && doc["actions"].contains(name);
  }

  Functor Bundle::functor(std::string const& name) const {
    if (!has_functor(name)) {
      throw Error(ErrorKind::dangling_reference, "no functor '" + name + "' in the input");
    }
    Json const& j = doc["functors"][name];
    return functor_from_json(j, category(str(field(j, "source"))), category(str(field(j, "target"))));
  }

  CatAction Bundle::action(std::string const& name) const {
    if (!has_action(name)) {
      throw Error(ErrorKind::dangling_reference, "no action '" + name + "' in the input");
    }
    Json const& j = doc["actions"][name];
    return action_from_json(j, monoid(str(field(j, "monoid"))), category(str(field(j, "category"))));
  }

  Json Bundle::hashes() const {
    Json j = Json::object();
    for (auto const& [name, c] : categories) {
      j["categories"][name] = content_hash(to_json(*c));
    }
    for (auto const& [name, m] : monoids) {
      j["monoids"][name] = content_hash(to_json(*m));
    }
    for (auto const& [name, k] : complexes) {
      j["complexes"][name] = content_hash(to_json(k));
    }
    if (doc.contains("functors")) {
      for (auto const& [name, f] : doc["functors"].items()) {
        j["functors"][name] = content_hash(f);
      }
    }
    if (doc.contains("actions")) {
      for (auto const& [name, a] : doc["actions"].items()) {
        j["actions"][name] = content_hash(a);
      }
    }
    return j;
  }

  Bundle read_bundle(Json const& j, Limits const& limits) {
    if (!j.is_object()) {
      bad("an input document is a JSON object");
    }
    Bundle b;
    b.doc = j;
    if (j.contains("categories")) {
      for (auto const& [name, c] : j["categories"].items()) {
        b.categories[name] = category_from_json(c, limits);
      }
    }
    if (j.contains("monoids")) {
      for (auto const& [name, m] : j["monoids"].items()) {
        b.monoids[name] = monoid_from_json(m);
      }
    }
    if (j.contains("complexes")) {
      for (auto const& [name, k] : j["complexes"].items()) {
        b.complexes[name] = complex_from_json(k);
      }
    }
    // a bare category document is accepted as {"categories": {"C": ...}}
    if (b.categories.empty() && j.contains("objects") && j.contains("morphisms")) {
      b.categories["C"] = category_from_json(j, limits);
    }
    return b;
  }

  std::vector<GroupPair> pairs_from_json(Json const& j, Bundle const& b, FinMonoid const& g) {
    Json const& list = j.is_object() ? field(j, "pairs") : j;
    std::vector<GroupPair> out;
    for (auto const& p : list) {
      Json const& gj = field(p, "group");
      MonoidPtr   h  = gj.is_string() ? b.monoid(gj.get<std::string>()) : monoid_from_json(gj);
      std::vector<int> phi(h->size(), kNone);
      for (auto const& [k, v] : field(p, "phi").items()) {
        auto x = h->find(k);
        auto y = g.find(str(v));
        if (!x || !y) {
          throw Error(ErrorKind::dangling_reference, "unknown element in phi: " + k);
        }
        phi[*x] = *y;
      }
      for (int v : phi) {
        if (v == kNone) {
          bad("phi must be defined on every element");
        }
      }
      check_homomorphism(*h, g, phi);
      out.push_back({h, std::move(phi)});
    }
    return out;
  }

  std::vector<SubgroupPair> subgroup_pairs_from_json(Json const&      j,
                                                     FinMonoid const& hprime,
                                                     FinMonoid const& g) {
    Json const& list = j.is_object() ? field(j, "pairs") : j;
    std::vector<SubgroupPair> out;
    for (auto const& p : list) {
      Subgroup s;
      for (auto const& x : field(p, "subgroup")) {
        auto k = hprime.find(str(x));
        if (!k) {
          throw Error(ErrorKind::dangling_reference, "unknown element " + x.dump());
        }
        s.push_back(*k);
      }
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      require_subgroup(hprime, s);
      // phi is indexed by position in the sorted subgroup
      std::vector<int> phi(s.size(), kNone);
      for (auto const& [k, v] : field(p, "phi").items()) {
        auto x = hprime.find(k);
        auto y = g.find(str(v));
        auto at = x ? std::find(s.begin(), s.end(), *x) : s.end();
        if (at == s.end() || !y) {
          throw Error(ErrorKind::dangling_reference, "unknown element in phi: " + k);
        }
        phi[at - s.begin()] = *y;
      }
      for (int v : phi) {
        if (v == kNone) {
          bad("phi must be defined on every element");
        }
      }
      check_homomorphism(*subgroup_monoid(hprime, s), g, phi);
      out.push_back({std::move(s), std::move(phi)});
    }
    return out;
  }

  std::vector<Subgroup> family_from_json(Json const& j, FinMonoid const& g) {
    Json const& list = j.is_object() ? field(j, "family") : j;
    std::vector<Subgroup> out;
    for (auto const& h : list) {
      Subgroup s;
      for (auto const& x : h) {
        auto k = g.find(str(x));
        if (!k) {
          throw Error(ErrorKind::dangling_reference, "unknown element " + x.dump());
        }
        s.push_back(*k);
      }
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      require_subgroup(g, s);
      out.push_back(std::move(s));
    }
    return out;
  }

}  // namespace gcat
