#pragma once

#include "puremin/minimality.hpp"

#include <json.hpp>

namespace puremin {

using Json = nlohmann::ordered_json;

Json ring_to_json(const RingSpec& r);
RingSpec ring_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const RingSpec& ring, const Json& j);

Json module_to_json(const FPModule& m);
FPModule module_from_json(const RingSpec& ring, const Json& j);

Json complex_to_json(const ChainComplex& c);
ChainComplex complex_from_json(const Json& j);

Json homotopy_to_json(const Homotopy& h);
Json diagnosis_to_json(const DiagnosisReport& r);
Json trace_to_json(const ReductionTrace& t);
Json dimension_to_json(const DimensionResult& d);

}  // namespace puremin
