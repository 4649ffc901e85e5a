#pragma once

#include <memory>

#include <json.hpp>

#include "nilgrp/free_lie_algebra.hpp"
#include "nilgrp/identities.hpp"
#include "nilgrp/linear_algebra.hpp"
#include "nilgrp/matrix.hpp"

namespace nilgrp {

using Json = nlohmann::ordered_json;

// {"[x1,x2]": "1/2", ...} in basis order.
Json to_json(const LieElement& x);
// Keys may be any bracket expression over the generator symbols; they are
// rewritten into the Hall basis.
LieElement lie_from_json(const Json& j, const std::shared_ptr<const LieAlgebra>& algebra);
// Parses "[u,v]" / symbol bracket expressions.
LieElement parse_bracket_expression(std::string_view text, const std::shared_ptr<const LieAlgebra>& algebra);

// [{"pattern": [1,2], "coefficient": "-1/2"}, ...]
Json to_json(const PatternCoeffs& table);

// {"dim": d, "rows": [["p/q", ...], ...]}
Json to_json(const RationalMatrix& m);
RationalMatrix matrix_from_json(const Json& j);

Json to_json(const SynthesisCertificate& cert);
Json to_json(const ContainmentCertificate& cert);

}  // namespace nilgrp
