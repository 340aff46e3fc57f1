#include "scenario.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "aqt/error.hpp"
#include "aqt/group_rep.hpp"
#include "aqt/symmetry.hpp"

namespace aqt::cli {

using nlohmann::json;

std::string to_string(Kind k) {
  switch (k) {
    case Kind::gns: return "gns";
    case Kind::equiv: return "equiv";
    case Kind::qubit: return "qubit";
    case Kind::group: return "group";
    case Kind::ccr: return "ccr";
    case Kind::field: return "field";
    case Kind::symmetry: return "symmetry";
  }
  return "unknown";
}

const std::vector<Kind>& all_kinds() {
  static const std::vector<Kind> kinds{Kind::gns, Kind::equiv, Kind::qubit, Kind::group,
                                       Kind::ccr, Kind::field, Kind::symmetry};
  return kinds;
}

std::optional<Kind> kind_from_string(const std::string& s) {
  for (Kind k : all_kinds())
    if (to_string(k) == s) return k;
  return std::nullopt;
}

ScenarioError::ScenarioError(std::string source, std::string location, const std::string& message)
    : std::runtime_error(source + ": " + (location.empty() ? "/" : location) + ": " + message),
      source_(std::move(source)),
      location_(std::move(location)),
      detail_(message) {}

const std::map<std::string, double>& default_tolerances(Kind k) {
  static const std::map<Kind, std::map<std::string, double>> table{
      {Kind::gns, {{"reconstruction", 1e-9}, {"homomorphism", 1e-9}}},
      {Kind::equiv, {{"intertwiner", 1e-8}, {"transition", 1e-8}}},
      {Kind::qubit, {{"transition", 1e-12}}},
      {Kind::group,
       {{"reconstruction", 1e-9}, {"unitarity", 1e-9}, {"homomorphism", 1e-9}, {"orthogonality", 1e-12}}},
      {Kind::ccr, {{"wick", 1e-6}, {"ccr", 1e-12}, {"heisenberg", 1e-12}, {"cocycle", 1e-10}, {"second_moment", 1e-8}}},
      {Kind::field, {{"commutator", 1e-10}, {"equal_time", 0.0}, {"green", 0.05}}},
      {Kind::symmetry, {{"stationarity", kStationarityTolerance}, {"implementer", 1e-9}}},
  };
  return table.at(k);
}

namespace {

// A JSON value together with its pointer, so every rejection names its field.
class Node {
 public:
  Node(const json& j, std::string path, const std::string& source) : j_(&j), path_(std::move(path)), source_(&source) {}

  [[noreturn]] void fail(const std::string& message) const { throw ScenarioError(*source_, path_, message); }

  const std::string& path() const { return path_; }
  const json& raw() const { return *j_; }
  bool is_array() const { return j_->is_array(); }
  bool is_object() const { return j_->is_object(); }

  void require_object() const {
    if (!j_->is_object()) fail("expected an object");
  }

  void allow_keys(const std::vector<std::string>& keys) const {
    require_object();
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& item : j_->items())
      if (!allowed.count(item.key())) {
        std::string list;
        for (const auto& k : allowed) list += (list.empty() ? "" : ", ") + k;
        Node(item.value(), child_path(item.key()), *source_).fail("unknown field (allowed: " + list + ")");
      }
  }

  bool has(const char* key) const { return j_->is_object() && j_->contains(key); }

  Node at(const char* key) const {
    require_object();
    if (!j_->contains(key)) fail(std::string("missing required field '") + key + "'");
    return Node((*j_)[key], child_path(key), *source_);
  }

  std::optional<Node> find(const char* key) const {
    require_object();
    if (!j_->contains(key)) return std::nullopt;
    return Node((*j_)[key], child_path(key), *source_);
  }

  std::size_t size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  Node operator[](std::size_t i) const { return Node((*j_)[i], path_ + "/" + std::to_string(i), *source_); }

  double number() const {
    if (!j_->is_number()) fail("expected a number");
    const double v = j_->get<double>();
    if (!std::isfinite(v)) fail("numeric literal is not finite");
    return v;
  }

  double positive() const {
    const double v = number();
    if (!(v > 0.0)) fail("expected a positive number");
    return v;
  }

  std::size_t count() const {
    if (!j_->is_number_integer()) fail("expected a non-negative integer");
    if (!j_->is_number_unsigned() && j_->get<long long>() < 0) fail("expected a non-negative integer");
    return j_->get<std::size_t>();
  }

  std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  bool boolean() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
  }

  Complex complex() const {
    if (j_->is_number()) return number();
    if (!j_->is_array() || j_->size() != 2) fail("expected a complex number [re, im]");
    return {(*this)[0].number(), (*this)[1].number()};
  }

  std::vector<std::size_t> counts() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].count());
    return out;
  }

  RealVector real_vector() const {
    RealVector v(static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i) v(static_cast<Eigen::Index>(i)) = (*this)[i].number();
    return v;
  }

  Vector vector() const {
    Vector v(static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i) v(static_cast<Eigen::Index>(i)) = (*this)[i].complex();
    return v;
  }

  // Row-major list of rows.
  Matrix matrix(std::size_t rows, std::size_t cols) const {
    if (size() != rows) fail(fmt::format("expected {} rows", rows));
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
      const Node row = (*this)[r];
      if (row.size() != cols) row.fail(fmt::format("expected {} entries", cols));
      for (std::size_t c = 0; c < cols; ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c].complex();
    }
    return m;
  }

  RealMatrix square_real_matrix() const {
    const std::size_t n = size();
    if (n == 0) fail("expected a non-empty square matrix");
    RealMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
      const Node row = (*this)[r];
      if (row.size() != n) row.fail(fmt::format("expected {} entries", n));
      for (std::size_t c = 0; c < n; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c].number();
    }
    return m;
  }

 private:
  std::string child_path(const std::string& key) const {
    std::string escaped;
    for (char ch : key) {
      if (ch == '~') escaped += "~0";
      else if (ch == '/') escaped += "~1";
      else escaped += ch;
    }
    return path_ + "/" + escaped;
  }

  const json* j_;
  std::string path_;
  const std::string* source_;
};

bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'; }

// File stem with anything outside the name alphabet replaced by '_'.
std::string default_name(const std::string& source) {
  std::string stem = std::filesystem::path(source).stem().string();
  for (char& c : stem)
    if (!name_char(c)) c = '_';
  return stem.empty() ? "scenario" : stem;
}

std::vector<std::size_t> parse_blocks(const Node& algebra) {
  algebra.allow_keys({"blocks"});
  const Node b = algebra.at("blocks");
  std::vector<std::size_t> blocks = b.counts();
  if (blocks.empty()) b.fail("at least one block is required");
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i] == 0 || blocks[i] > 64) b[i].fail("block dimension must be in 1..64");
  return blocks;
}

std::vector<Matrix> parse_block_matrices(const Node& n, const std::vector<std::size_t>& blocks) {
  if (n.size() != blocks.size()) n.fail(fmt::format("expected one matrix per block ({})", blocks.size()));
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < blocks.size(); ++i) out.push_back(n[i].matrix(blocks[i], blocks[i]));
  return out;
}

std::vector<Matrix> parse_densities(const Node& state, const std::vector<std::size_t>& blocks) {
  state.allow_keys({"densities"});
  const Node d = state.at("densities");
  std::vector<Matrix> rho = parse_block_matrices(d, blocks);
  Complex trace = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if ((rho[i] - rho[i].adjoint()).cwiseAbs().maxCoeff() > 1e-9) d[i].fail("density is not Hermitian");
    trace += rho[i].trace();
  }
  if (std::abs(trace - 1.0) > kNormalizationTolerance)
    d.fail(fmt::format("normalization: total trace {} differs from 1 (tol {:g})", trace.real(), kNormalizationTolerance));
  try {
    (void)State::from_densities(StarAlgebra(blocks), rho);
  } catch (const aqt::Error& e) {
    d.fail(e.what());
  }
  return rho;
}

StateSpec parse_state(const Node& root) {
  StateSpec s;
  s.blocks = parse_blocks(root.at("algebra"));
  s.densities = parse_densities(root.at("state"), s.blocks);
  return s;
}

QubitConfig parse_qubit_config(const Node& n) {
  n.allow_keys({"default", "overrides", "tail"});
  auto qubit = [](const Node& v) {
    if (v.size() != 2) v.fail("expected a qubit vector of two complex entries");
    const Vector x = v.vector();
    const double norm = x.norm();
    if (std::abs(norm - 1.0) > 1e-6) v.fail("qubit vector must have unit norm");
    return Qubit(x(0), x(1));
  };
  QubitConfig cfg = n.has("default") ? QubitConfig(qubit(n.at("default"))) : QubitConfig();
  if (auto ov = n.find("overrides")) {
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < ov->size(); ++i) {
      const Node o = (*ov)[i];
      o.allow_keys({"site", "vector"});
      const std::size_t site = o.at("site").count();
      if (site == 0) o.at("site").fail("sites are numbered from 1");
      if (!seen.insert(site).second) o.at("site").fail("repeated site");
      cfg.set_override(site, qubit(o.at("vector")));
    }
  }
  if (auto t = n.find("tail")) {
    t->allow_keys({"kind", "c", "p", "start"});
    const Node kind = t->at("kind");
    if (kind.string() != "power") kind.fail("unknown tail kind (allowed: power)");
    PowerTail tail;
    tail.c = t->at("c").number();
    tail.p = t->at("p").positive();
    if (auto s = t->find("start")) {
      tail.start = s->count();
      if (tail.start == 0) s->fail("tail start must be >= 1");
    }
    cfg.set_tail(tail);
  }
  return cfg;
}

GnsParams parse_gns(const Node& root) {
  GnsParams p;
  p.state = parse_state(root);
  if (auto n = root.find("samples")) p.samples = n->count();
  if (auto n = root.find("seed")) p.seed = n->count();
  return p;
}

EquivParams parse_equiv(const Node& root) {
  EquivParams p;
  p.blocks = parse_blocks(root.at("algebra"));
  p.first = parse_densities(root.at("first"), p.blocks);
  p.second = parse_densities(root.at("second"), p.blocks);
  return p;
}

QubitParams parse_qubit(const Node& root) {
  QubitParams p;
  p.first = parse_qubit_config(root.at("first"));
  p.second = parse_qubit_config(root.at("second"));
  if (auto n = root.find("window")) {
    p.window = n->count();
    if (p.window == 0) n->fail("window must be >= 1");
  }
  if (auto n = root.find("csv_sites")) p.csv_sites = n->count();
  return p;
}

GroupParams parse_group(const Node& root) {
  GroupParams p;
  const Node g = root.at("group");
  g.allow_keys({"kind", "n", "table"});
  const Node kind = g.at("kind");
  const std::string k = kind.string();
  GroupPtr group;
  try {
    if (k == "cyclic") {
      p.source = GroupParams::Source::cyclic;
      p.n = g.at("n").count();
      if (p.n == 0 || p.n > 64) g.at("n").fail("order must be in 1..64");
      group = FiniteGroup::cyclic(p.n);
    } else if (k == "symmetric") {
      p.source = GroupParams::Source::symmetric;
      p.n = g.at("n").count();
      if (p.n == 0 || p.n > 4) g.at("n").fail("symmetric groups are supported for 1 <= n <= 4");
      group = FiniteGroup::symmetric(p.n);
    } else if (k == "table") {
      p.source = GroupParams::Source::table;
      const Node t = g.at("table");
      for (std::size_t i = 0; i < t.size(); ++i) p.table.push_back(t[i].counts());
      if (p.table.size() > 64) t.fail("order must be at most 64");
      try {
        group = FiniteGroup::from_table(p.table);
      } catch (const aqt::Error& e) {
        t.fail(e.what());
      }
    } else {
      kind.fail("unknown group kind (allowed: cyclic, symmetric, table)");
    }
  } catch (const aqt::Error& e) {
    g.fail(e.what());
  }

  const Node f = root.at("function");
  f.allow_keys({"kind", "element", "value", "values", "index"});
  const Node fk = f.at("kind");
  const std::string fn = fk.string();
  if (fn == "delta") {
    p.function = GroupParams::Function::delta;
    p.element = f.has("element") ? f.at("element").count() : group->identity();
    if (p.element >= group->order()) f.at("element").fail("element index out of range");
  } else if (fn == "constant") {
    p.function = GroupParams::Function::constant;
    p.constant = f.has("value") ? f.at("value").complex() : Complex(1.0);
  } else if (fn == "values") {
    p.function = GroupParams::Function::values;
    const Node v = f.at("values");
    if (v.size() != group->order()) v.fail(fmt::format("expected one value per element ({})", group->order()));
    for (std::size_t i = 0; i < v.size(); ++i) p.values.push_back(v[i].complex());
  } else if (fn == "character") {
    p.function = GroupParams::Function::character;
    p.character = f.at("index").count();
    const std::size_t classes = group->conjugacy_classes().size();
    if (p.character >= classes) f.at("index").fail(fmt::format("character index must be below {}", classes));
  } else {
    fk.fail("unknown function kind (allowed: delta, constant, values, character)");
  }
  return p;
}

CcrParams parse_ccr(const Node& root) {
  CcrParams p;
  const Node gram = root.at("gram");
  p.gram = gram.square_real_matrix();
  const Node k = root.at("k");
  p.k = k.square_real_matrix();
  if (p.k.rows() != p.gram.rows()) k.fail("K and the Gram matrix must have equal dimensions");
  if (p.gram.rows() > 16) gram.fail("dimension must be at most 16");
  try {
    (void)CcrSpace(p.gram, p.k);
  } catch (const aqt::Error& e) {
    root.fail(e.what());
  }
  if (auto m = root.find("moments")) {
    m->allow_keys({"max_order", "samples"});
    if (auto o = m->find("max_order")) {
      p.max_order = o->count();
      if (p.max_order < 2 || p.max_order > kMomentOracleMaxOrder || p.max_order % 2 != 0)
        o->fail("max_order must be 2, 4 or 6");
    }
    if (auto s = m->find("samples")) p.samples = s->count();
  }
  if (auto n = root.find("cocycle_samples")) p.cocycle_samples = n->count();
  if (auto n = root.find("seed")) p.seed = n->count();
  std::optional<Node> fock = root.find("fock");
  if (fock) {
    fock->allow_keys({"max_occupation"});
    const Node m = fock->at("max_occupation");
    p.max_occupation = m.count();
    if (p.max_occupation == 0) m.fail("max_occupation must be >= 1");
  }
  try {
    (void)FockTruncation(CcrSpace(p.gram, p.k), p.max_occupation);
  } catch (const aqt::Error& e) {
    if (fock) fock->at("max_occupation").fail(e.what());
    root.fail(std::string(e.what()) + " (set fock.max_occupation lower)");
  }
  if (auto s = root.find("shift")) {
    s->allow_keys({"vector", "tail"});
    VacuumShift shift;
    if (auto v = s->find("vector")) {
      shift.vector = v->real_vector();
      if (shift.vector->size() != p.gram.rows()) v->fail("shift vector dimension does not match the space");
    }
    if (auto t = s->find("tail")) {
      t->allow_keys({"c", "p"});
      shift.tail = VacuumShift::Tail{t->at("c").number(), t->at("p").positive()};
    }
    if (shift.vector.has_value() == shift.tail.has_value()) s->fail("exactly one of 'vector' or 'tail' is required");
    p.shift = shift;
  }
  if (auto q = root.find("shift_probe")) {
    p.shift_probe = q->real_vector();
    if (p.shift_probe->size() != p.gram.rows()) q->fail("probe dimension does not match the space");
  }
  if (auto f = root.find("mode_family")) {
    f->allow_keys({"kind", "value", "amplitude", "exponent", "values"});
    ModeFamily fam;
    const Node kind = f->at("kind");
    const std::string k2 = kind.string();
    if (k2 == "constant") {
      fam.kind = ModeFamily::Kind::constant;
      fam.value = f->at("value").positive();
    } else if (k2 == "power_tail") {
      fam.kind = ModeFamily::Kind::power_tail;
      fam.amplitude = f->at("amplitude").number();
      fam.exponent = f->at("exponent").positive();
    } else if (k2 == "finite" || k2 == "sampled") {
      fam.kind = k2 == "finite" ? ModeFamily::Kind::finite : ModeFamily::Kind::sampled;
      const Node v = f->at("values");
      for (std::size_t i = 0; i < v.size(); ++i) {
        fam.values.push_back(v[i].number());
        if (!(fam.values.back() > 0.0)) v[i].fail("eigenvalues of S must be positive");
      }
    } else {
      kind.fail("unknown mode family kind (allowed: constant, power_tail, finite, sampled)");
    }
    p.family = fam;
  }
  return p;
}

Point4 parse_point(const Node& n) {
  if (n.size() != 4) n.fail("expected a 4-vector (x0, x1, x2, x3)");
  return {n[0].number(), n[1].number(), n[2].number(), n[3].number()};
}

FieldParams parse_field(const Node& root) {
  FieldParams p;
  const Node g = root.at("grid");
  g.allow_keys({"mass", "cutoff", "points"});
  if (auto m = g.find("mass")) p.grid.mass = m->positive();
  p.grid.cutoff = 6.0 * p.grid.mass;
  if (auto c = g.find("cutoff")) p.grid.cutoff = c->positive();
  if (auto n = g.find("points")) {
    p.grid.points = n->count();
    if (p.grid.points < 3 || p.grid.points % 2 == 0 || p.grid.points > 65) n->fail("points must be odd and in 3..65");
  }
  if (auto n = root.find("pairs")) p.pairs = n->count();
  if (auto n = root.find("seed")) p.seed = n->count();
  if (auto kg = root.find("klein_gordon")) {
    kg->allow_keys({"point", "step"});
    if (auto x = kg->find("point")) p.kg_point = parse_point(*x);
    if (auto h = kg->find("step")) p.kg_step = h->positive();
  }
  if (auto w = root.find("witness")) {
    w->allow_keys({"mass_prime"});
    p.witness_mass = w->at("mass_prime").positive();
  }
  if (auto e = root.find("euclidean")) {
    e->allow_keys({"points", "regulator", "profile_step", "profile_count"});
    EuclideanSpec spec{p.grid.mass, p.grid.cutoff, 17, 0.0};
    if (auto n = e->find("points")) {
      spec.points = n->count();
      if (spec.points < 3 || spec.points % 2 == 0 || spec.points > 33) n->fail("points must be odd and in 3..33");
    }
    if (auto r = e->find("regulator")) {
      spec.regulator = r->number();
      if (spec.regulator < 0.0) r->fail("regulator must be >= 0");
    }
    if (auto s = e->find("profile_step")) p.profile_step = s->positive();
    if (auto c = e->find("profile_count")) p.profile_count = c->count();
    p.euclidean = spec;
  }
  return p;
}

SymmetryParams parse_symmetry(const Node& root) {
  SymmetryParams p;
  p.state = parse_state(root);
  const StarAlgebra alg(p.state.blocks);
  const Node g = root.at("group");
  if (g.size() == 0) g.fail("at least one automorphism is required");
  std::vector<InnerAutomorphism> elements;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Node e = g[i];
    e.allow_keys({"unitary", "permutation"});
    AutomorphismSpec a;
    a.unitary = parse_block_matrices(e.at("unitary"), p.state.blocks);
    if (auto perm = e.find("permutation")) a.permutation = perm->counts();
    try {
      elements.emplace_back(AlgebraElement(alg, a.unitary), a.permutation, 1e-9);
    } catch (const aqt::Error& err) {
      e.fail(err.what());
    }
    p.group.push_back(std::move(a));
  }
  try {
    (void)AutomorphismGroup(elements);
  } catch (const aqt::Error& err) {
    g.fail(err.what());
  }
  if (auto m = root.find("multipliers")) p.multipliers = m->boolean();
  if (auto f = root.find("flow")) {
    f->allow_keys({"generator", "element", "step"});
    SymmetryParams::Flow flow;
    flow.generator = parse_block_matrices(f->at("generator"), p.state.blocks);
    flow.element = parse_block_matrices(f->at("element"), p.state.blocks);
    if (!AlgebraElement(alg, flow.generator).is_hermitian(1e-10)) f->at("generator").fail("generator must be Hermitian");
    if (auto h = f->find("step")) flow.step = h->positive();
    p.flow = flow;
  }
  return p;
}

const std::vector<std::string>& kind_keys(Kind k) {
  static const std::vector<std::string> gns{"kind", "name", "tolerances", "output", "algebra", "state",
                                                      "samples", "seed"};
  static const std::vector<std::string> equiv{"kind", "name", "tolerances", "output", "algebra", "first",
                                                        "second"};
  static const std::vector<std::string> qubit{"kind", "name", "tolerances", "output", "first", "second",
                                                        "window", "csv_sites"};
  static const std::vector<std::string> group{"kind", "name", "tolerances", "output", "group", "function"};
  static const std::vector<std::string> ccr{"kind",  "name",    "tolerances",      "output", "gram",
                                                      "k",     "moments", "cocycle_samples", "seed",   "fock",
                                                      "shift", "shift_probe", "mode_family"};
  static const std::vector<std::string> field{"kind",  "name", "tolerances",   "output",  "grid",
                                                        "pairs", "seed", "klein_gordon", "witness", "euclidean"};
  static const std::vector<std::string> symmetry{"kind",  "name",        "tolerances", "output",
                                                           "algebra", "state",     "group",      "multipliers",
                                                           "flow"};
  switch (k) {
    case Kind::gns: return gns;
    case Kind::equiv: return equiv;
    case Kind::qubit: return qubit;
    case Kind::group: return group;
    case Kind::ccr: return ccr;
    case Kind::field: return field;
    case Kind::symmetry: return symmetry;
  }
  return gns;
}

Scenario parse_object(const Node& root, const std::string& source, const std::string& fallback_name) {
  root.require_object();
  Scenario s;
  s.source = source;
  const Node kind = root.at("kind");
  const auto k = kind_from_string(kind.string());
  if (!k) kind.fail("unknown kind '" + kind.string() + "' (allowed: gns, equiv, qubit, group, ccr, field, symmetry)");
  s.kind = *k;
  root.allow_keys(kind_keys(s.kind));
  s.name = fallback_name;
  if (auto n = root.find("name")) {
    s.name = n->string();
    if (s.name.empty()) n->fail("name must not be empty");
    for (char c : s.name)
      if (!name_char(c)) n->fail("name may contain only letters, digits, '_', '-' and '.'");
  }

  if (auto t = root.find("tolerances")) {
    t->require_object();
    const auto& defaults = default_tolerances(s.kind);
    for (const auto& item : t->raw().items()) {
      const Node v = t->at(item.key().c_str());
      if (!defaults.count(item.key())) {
        std::string list;
        for (const auto& [key, value] : defaults) list += (list.empty() ? "" : ", ") + key;
        v.fail("unknown tolerance (allowed: " + list + ")");
      }
      const double x = v.number();
      if (x < 0.0) v.fail("tolerance must be >= 0");
      s.tolerances[item.key()] = x;
    }
  }
  if (auto o = root.find("output")) {
    o->allow_keys({"report", "csv"});
    if (auto r = o->find("report")) s.report_path = r->string();
    if (auto c = o->find("csv")) s.csv_dir = c->string();
  }

  switch (s.kind) {
    case Kind::gns: s.params = parse_gns(root); break;
    case Kind::equiv: s.params = parse_equiv(root); break;
    case Kind::qubit: s.params = parse_qubit(root); break;
    case Kind::group: s.params = parse_group(root); break;
    case Kind::ccr: s.params = parse_ccr(root); break;
    case Kind::field: s.params = parse_field(root); break;
    case Kind::symmetry: s.params = parse_symmetry(root); break;
  }
  return s;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::vector<Scenario> parse_scenarios(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, col] = line_column(text, at);
    std::string what = e.what();
    // Strip the library's "[json.exception.parse_error.101] parse error at ...: " prefix.
    if (auto pos = what.find(": syntax error"); pos != std::string::npos) what = what.substr(pos + 2);
    throw ScenarioError(source, fmt::format("line {}, column {}", line, col), what);
  } catch (const json::out_of_range& e) {
    // Raised for number literals that overflow a double.
    std::string what = e.what();
    if (auto pos = what.find("] "); pos != std::string::npos) what = what.substr(pos + 2);
    throw ScenarioError(source, "", "numeric literal is not finite: " + what);
  }
  const Node root(doc, "", source);
  std::vector<Scenario> out;
  if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i)
      out.push_back(parse_object(root[i], source, fmt::format("{}.{}", default_name(source), i)));
  } else {
    out.push_back(parse_object(root, source, default_name(source)));
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!names.insert(out[i].name).second)
      throw ScenarioError(source, doc.is_array() ? fmt::format("/{}/name", i) : "/name",
                          "duplicate scenario name '" + out[i].name + "'");
  return out;
}

Scenario parse_scenario(const std::string& text, const std::string& source) {
  auto all = parse_scenarios(text, source);
  if (all.size() != 1) throw ScenarioError(source, "", fmt::format("expected exactly one scenario, found {}", all.size()));
  return std::move(all.front());
}

}  // namespace aqt::cli
