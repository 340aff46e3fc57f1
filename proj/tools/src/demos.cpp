#include "demos.hpp"

#include <map>

namespace aqt::cli {

namespace {

const char* kGns[] = {
    R"({"kind": "gns", "name": "gns_m2_pure",
  "algebra": {"blocks": [2]},
  "state": {"densities": [[[1, 0], [0, 0]]]}})",
    R"({"kind": "gns", "name": "gns_m3_m2_mixed", "samples": 100, "seed": 7,
  "algebra": {"blocks": [3, 2]},
  "state": {"densities": [
    [[0.3, [0.05, 0.02], 0], [[0.05, -0.02], 0.2, 0], [0, 0, 0.1]],
    [[0.25, 0.1], [0.1, 0.15]]]}})",
};

const char* kEquiv[] = {
    R"({"kind": "equiv", "name": "equiv_two_block",
  "algebra": {"blocks": [2, 2]},
  "first":  {"densities": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]},
  "second": {"densities": [[[0, 0], [0, 0]], [[1, 0], [0, 0]]]}})",
    R"({"kind": "equiv", "name": "equiv_same_block",
  "algebra": {"blocks": [2, 2]},
  "first":  {"densities": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]},
  "second": {"densities": [[[0.5, 0.5], [0.5, 0.5]], [[0, 0], [0, 0]]]}})",
};

const char* kQubit[] = {
    R"({"kind": "qubit", "name": "qubit_tail_p1",
  "first": {},
  "second": {"tail": {"kind": "power", "c": 1, "p": 1}}})",
    R"({"kind": "qubit", "name": "qubit_tail_p_half",
  "first": {},
  "second": {"tail": {"kind": "power", "c": 1, "p": 0.5}}})",
    R"({"kind": "qubit", "name": "qubit_finite_difference",
  "first": {},
  "second": {"overrides": [{"site": 2, "vector": [0, 1]},
                           {"site": 5, "vector": [0.6, [0, 0.8]]}]}})",
};

const char* kGroup[] = {
    R"({"kind": "group", "name": "group_z2_constant",
  "group": {"kind": "cyclic", "n": 2},
  "function": {"kind": "constant", "value": 1}})",
    R"({"kind": "group", "name": "group_z3_delta",
  "group": {"kind": "cyclic", "n": 3},
  "function": {"kind": "delta"}})",
    R"({"kind": "group", "name": "group_s3_standard",
  "group": {"kind": "symmetric", "n": 3},
  "function": {"kind": "character", "index": 2}})",
};

const char* kCcr[] = {
    R"({"kind": "ccr", "name": "ccr_fock_shift",
  "gram": [[1, 0], [0, 1]],
  "k": [[1.4142135623730951, 0], [0, 1.4142135623730951]],
  "moments": {"max_order": 6, "samples": 4},
  "fock": {"max_occupation": 6},
  "shift": {"vector": [0.5, -0.25]},
  "shift_probe": [1, 0.5],
  "mode_family": {"kind": "constant", "value": 2}})",
    R"({"kind": "ccr", "name": "ccr_general_power_tail", "seed": 3,
  "gram": [[2, 0.3, 0], [0.3, 1.5, 0.2], [0, 0.2, 1]],
  "k": [[1.5, 0.2, 0], [-0.1, 1.2, 0.3], [0, 0.1, 1.8]],
  "moments": {"max_order": 4, "samples": 6},
  "fock": {"max_occupation": 4},
  "shift": {"tail": {"c": 1, "p": 1}},
  "mode_family": {"kind": "power_tail", "amplitude": 1, "exponent": 2}})",
    R"({"kind": "ccr", "name": "ccr_non_fock_scale",
  "gram": [[1]],
  "k": [[2.1213203435596424]],
  "moments": {"max_order": 4, "samples": 3},
  "shift": {"tail": {"c": 1, "p": 0.5}},
  "mode_family": {"kind": "constant", "value": 4.5}})",
};

const char* kField[] = {
    R"({"kind": "field", "name": "field_lambda6_n33",
  "grid": {"mass": 1, "cutoff": 6, "points": 33},
  "pairs": 20,
  "witness": {"mass_prime": 2},
  "euclidean": {"points": 17, "regulator": 2, "profile_step": 0.1, "profile_count": 30}})",
};

const char* kSymmetry[] = {
    R"({"kind": "symmetry", "name": "symmetry_pauli_m2", "multipliers": true,
  "algebra": {"blocks": [2]},
  "state": {"densities": [[[1, 0], [0, 0]]]},
  "group": [
    {"unitary": [[[1, 0], [0, 1]]]},
    {"unitary": [[[0, 1], [1, 0]]]},
    {"unitary": [[[0, [0, -1]], [[0, 1], 0]]]},
    {"unitary": [[[1, 0], [0, -1]]]}],
  "flow": {"generator": [[[1, 0.3], [0.3, -0.5]]], "element": [[[0, 1], [2, 0]]], "step": 0.001}})",
    R"({"kind": "symmetry", "name": "symmetry_z3_blocks",
  "algebra": {"blocks": [1, 1, 1]},
  "state": {"densities": [[[0.5]], [[0.25]], [[0.25]]]},
  "group": [
    {"unitary": [[[1]], [[1]], [[1]]]},
    {"unitary": [[[1]], [[1]], [[1]]], "permutation": [1, 2, 0]},
    {"unitary": [[[1]], [[1]], [[1]]], "permutation": [2, 0, 1]}]})",
};

template <std::size_t N>
std::vector<Demo> make(const char* (&texts)[N], Kind k) {
  std::vector<Demo> out;
  for (std::size_t i = 0; i < N; ++i) out.push_back(Demo{"demo:" + to_string(k) + "/" + std::to_string(i), texts[i]});
  return out;
}

}  // namespace

const std::vector<Demo>& demos(Kind k) {
  static const std::map<Kind, std::vector<Demo>> table{
      {Kind::gns, make(kGns, Kind::gns)},           {Kind::equiv, make(kEquiv, Kind::equiv)},
      {Kind::qubit, make(kQubit, Kind::qubit)},     {Kind::group, make(kGroup, Kind::group)},
      {Kind::ccr, make(kCcr, Kind::ccr)},           {Kind::field, make(kField, Kind::field)},
      {Kind::symmetry, make(kSymmetry, Kind::symmetry)},
  };
  return table.at(k);
}

}  // namespace aqt::cli
