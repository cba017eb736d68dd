#pragma once

#include <string>

#include <json.hpp>

#include "trikit/lattice.hpp"

namespace trikit {

using Json = nlohmann::json;

// Field: {"type":"prime","p":7,"xi":2} or {"type":"q-omega"}
Json field_to_json(const Field& f);
Field field_from_json(const Json& j);

// FieldElement: integer (prime backend) or ["a","b"] rationals as strings
Json element_to_json(const FieldElement& e);
FieldElement element_from_json(const Field& f, const Json& j);

// Jet: {"prec":24,"coeffs":{"-2":c,...}}, "prec":null for exact
Json jet_to_json(const LaurentJet& x);
LaurentJet jet_from_json(const Field& f, const Json& j);

// AlgebraElement: array of 8 jets
Json algebra_element_to_json(const AlgebraElement& x);
AlgebraElement algebra_element_from_json(const Field& f, const Json& j);

// JetMatrix: row-major nested arrays of jets
Json matrix_to_json(const JetMatrix& m);
JetMatrix matrix_from_json(const Field& f, const Json& j);

// Lattice file: {"field":..., "prec":24, "basis":[col...]} (columns)
Json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j);

// Group element file: {"field":..., "matrix": rows}
Json group_to_json(const Field& f, const JetMatrix& g);
std::pair<Field, JetMatrix> group_from_json(const Json& j);

// Witness file: {"field":..., "coords":[jet...]}
Json witness_to_json(const Field& f, const AlgebraElement& a);
std::pair<Field, AlgebraElement> witness_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

/// Monomial parser for CLI arguments: "t^2", "3*t^-1", "t", "1".
LaurentJet parse_t_monomial(const Field& f, const std::string& s);

}  // namespace trikit
