#pragma once

// JSON wire formats. Matrices: {"ring": n, "rows": r, "cols": c,
// "entries": [row-major]}. Modules: {"ring": n, "presentation": Matrix} or
// {"ring": n, "invariants": [d...]}. Morphisms embed source and target.

#include <json.hpp>

#include "cotlab/complexes.hpp"
#include "cotlab/products.hpp"

namespace cotlab {

using Json = nlohmann::json;

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(const FPModule& m);
FPModule module_from_json(const Json& j);

Json to_json(const ModuleMorphism& f);
ModuleMorphism morphism_from_json(const Json& j);

Json to_json(const ShortExactSequence& s);
ShortExactSequence ses_from_json(const Json& j);

Json to_json(const ChainComplex& c);
ChainComplex complex_from_json(const Json& j);

Json to_json(const CotorsionReport& r);
Json to_json(const Split1VarReport& r);
Json to_json(const NSplitReport& r);
Json to_json(const CornerMapReport& r);
Json to_json(const QuillenReport& r);
Json to_json(const LemmaReport& r);

}  // namespace cotlab
