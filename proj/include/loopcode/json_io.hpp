#pragma once

#include <json.hpp>

#include "loopcode/codes.hpp"
#include "loopcode/designs.hpp"
#include "loopcode/identities.hpp"
#include "loopcode/quantum.hpp"

namespace loopcode {

using json = nlohmann::json;

// {"p":2,"r":1,"modulus":[1]} — modulus lists the r low coefficients, monic implied;
// omitted modulus selects the shipped default.
FieldSpec field_spec_from_json(const json& j);
json field_spec_to_json(const FieldSpec& s);

// vectors: integer index, or array of per-coordinate values
long long vector_from_json(const json& j, const VSpace& v);
json vector_to_json(long long idx, const VSpace& v);
Subspace subspace_from_json(const json& j, const VSpace& v);
json subspace_to_json(const Subspace& s);

// {"arity":2,"codomain":"ring","dim":2,"field":{...},"values":[{"args":[[1,0],[0,1]],"val":1},...]}
// or {"bilinear_matrix":[[...]]}; "standard_symplectic"/"standard_polarization" shorthands.
FormTable form_from_json(const json& j, const VSpace& v, const Codomain& cod);
json form_to_json(const FormTable& f);

// {"field":{...},"dim":2,"omega":{...},"beta":{...},"theta":{...},"reduction_tagged":bool}
std::shared_ptr<AlmostSymplecticSpace> space_from_json(const json& j);

// {"elements":[...],"table":[[...]]}
FiniteMagma magma_from_json(const json& j);
json magma_to_json(const FiniteMagma& m);

// {"field":{...},"n":8,"generator":[[...]]}
LinearCode code_from_json(const json& j);
json code_to_json(const LinearCode& c);

// {"dim":3,"field":"Q" | p,"c":[[[...]]]} with rational strings allowed
BilinearOp bilinear_op_from_json(const json& j);

json design_to_json(const LatinSquareDesign& d);
LatinSquareDesign design_from_json(const json& j);

json tensor_to_json(const CycVector& t, int legs, int q);

std::string graph_to_dot(const FlagGraph& g, const std::vector<std::string>& vertex_names = {});

// FNV-1a 64-bit content hash, hex string; used to tie reports to their inputs.
std::string content_hash(const std::string& bytes);

}  // namespace loopcode
