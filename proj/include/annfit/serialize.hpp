#pragma once

#include <optional>
#include <string>

#include "annfit/complexes.hpp"
#include "annfit/modules.hpp"

namespace annfit {

// JSON text forms.  Emission is deterministic: fixed key order, two-space
// indentation, coefficients as decimal strings ("p/q" for rationals), one
// trailing newline.  Files produced by these functions round-trip byte for
// byte through parse + serialize.
//
//   element  {"group":[d1,...],"domain":"int|mod:l^N|rat","coeffs":["..."]}
//   matrix   {"rows":r,"cols":c,"entries":[[element,...],...]}
//   module   {"group":[...],"l":l,"factors":[e1,...],"actions":[[[..],..],..]}
//   complex  {"group":[...],"l":l,"ranks":[r0,...],"differentials":[matrix,..]}
//   ideal    {"group":[...],"l":l,"precision":N,"generators":[element,...]}
//
// Coefficient order is the group's mixed-radix element order throughout.

std::string serialize_element(const ZG& x);
std::string serialize_element(const QG& x);
// Canonical residues mod l^n under the "mod:l^n" domain tag.
std::string serialize_element_mod(const ZG& x, long l, long n);

// One payload set according to the domain tag; "mod:l^N" coefficients are
// returned as their canonical integer residues.
struct ParsedElement {
  std::string domain;
  std::optional<ZG> integral;
  std::optional<QG> rational;
};

ParsedElement parse_element(const std::string& text);
ZG parse_int_element(const std::string& text);  // requires domain "int"
QG parse_rat_element(const std::string& text);  // requires domain "rat"

std::string serialize_matrix(const ZGMatrix& a, const FiniteAbelianGroup& g);
std::string serialize_matrix(const QGMatrix& a, const FiniteAbelianGroup& g);
// All entries must be "int" over one common group (returned through
// group_out so zero-size matrices stay unambiguous).
ZGMatrix parse_int_matrix(const std::string& text,
                          FiniteAbelianGroup& group_out);

std::string serialize_module(const ConcreteModule& m);
ConcreteModule parse_module(const std::string& text);

std::string serialize_complex(const PerfectComplex& c);
// Structural parse; shapes and d compose d = 0 are re-checked on load.
PerfectComplex parse_complex(const std::string& text);

std::string serialize_ideal(const IdealHandle& h);
// Rebuilds the handle (G-closure and Howell bases are recomputed).
IdealHandle parse_ideal(const std::string& text, long guard = kDefaultGuard);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace annfit
