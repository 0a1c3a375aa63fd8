#pragma once

#include <string>
#include <string_view>

#include "qhm/crossed.hpp"
#include "qhm/element.hpp"
#include "qhm/measures.hpp"

namespace qhm {

// Expression grammar for element components:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := rational | 'x' | 'y' | 'e(' linear ')' | 'sinpi(' axis ')'
//           | 'cospi(' axis ')' | 'abs(' expr ')' | 'conj(' expr ')'
//           | 'chi(' scalar ',' scalar ')' | '(' expr ')' | '-' factor
//   linear := rational coefficients against x, y and a constant, with
//             implicit multiplication allowed ("2x+1/2y+1/4")
// chi endpoints take the full scalar syntax including sqrt terms.
// Throws ParseError with the failing offset.
ExprPtr parse_expr(std::string_view text);

// {"c":int, "mu":"<scalar>", "nu":"<scalar>", "d":int,
//  "components":[{"p":int, "expr":"<DSL>"}]}
// "d" may be omitted when the parameters are rational; when present it must
// agree with the field of mu and nu.  Duplicate p entries are rejected.
// An optional "space":"torus" tag marks the file as a crossed element; the
// plain loaders reject it and vice versa.
QhmElement element_from_json(const std::string& text);
QhmElement load_element(const std::string& path);

CrossedElement crossed_from_json(const std::string& text);
CrossedElement load_crossed(const std::string& path);

// {"type":"haar","N":512} or
// {"type":"atomic","points":[["x","y"],...],"weights":["1/4",...]}
Measure measure_from_json(const std::string& text);
Measure load_measure(const std::string& path);

std::string element_to_json(const QhmElement& a);  // inverse of element_from_json

}  // namespace qhm
