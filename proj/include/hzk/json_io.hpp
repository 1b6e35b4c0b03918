#pragma once

#include <json.hpp>

#include "hzk/coalgebra.hpp"
#include "hzk/doldkan.hpp"
#include "hzk/interpolation.hpp"
#include "hzk/matrix.hpp"
#include "hzk/series.hpp"
#include "hzk/species.hpp"

namespace hzk {

using Json = nlohmann::ordered_json;

// Scalars travel as "p/q" (or "p"); matrices as arrays of such strings.
Json scalar_to_json(const Rational& r);
Rational scalar_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const Json& j);  // named contexts only

Json residue_to_json(const PolyResidue& f);
PolyResidue residue_from_json(const Json& j);

Json coalgebra_to_json(const FinCoalgebra& c);
FinCoalgebra coalgebra_from_json(const Json& j);

Json species_to_json(const LinearSpecies& s);
LinearSpecies species_from_json(const Json& j);

Json presheaf_to_json(const dk::Presheaf& f);
dk::Presheaf presheaf_from_json(const dk::DoldKanDatum& datum, const Json& j);

Json algebra_ctx_to_json(const AlgebraCtx& a);

}  // namespace hzk
