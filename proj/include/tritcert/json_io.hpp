#pragma once

// JSON forms of tables, spectra, CSP and Label Cover instances. Every
// from_json throws ParseError on malformed or invalid input.

#include <string>

#include "json.hpp"

#include "tritcert/csp.hpp"
#include "tritcert/fourier.hpp"
#include "tritcert/longcode.hpp"
#include "tritcert/rational.hpp"
#include "tritcert/ternary.hpp"

namespace tritcert {

using Json = nlohmann::json;

/// {"num": n, "den": d}; numbers beyond int64 are written as strings.
Json rational_to_json(const Rational& r);
/// Accepts {"num", "den"}, an integer, or a "a/b" string.
Rational rational_from_json(const Json& j);

/// {"n": arity, "values": [...], "folded": bool}
Json table_to_json(const FunctionTable& f);
FunctionTable table_from_json(const Json& j);

/// [[alpha, re, im], ...] over every alpha.
Json spectrum_to_json(const FourierSpectrum& spec);

/// {"domain": 3, "vars": [...], "constraints": [{"kind", "params", "vars", "weight"}]}
Json csp_to_json(const CspInstance& instance);
CspInstance csp_from_json(const Json& j);

/// {"K", "d", "U": [...], "V": [...], "edges": [{"u", "v", "weight", "pi"}]}
Json labelcover_to_json(const LabelCoverInstance& lc);
LabelCoverInstance labelcover_from_json(const Json& j);

/// {"left": [...], "right": [...]}
Json labeling_to_json(const Labeling& l);
Labeling labeling_from_json(const Json& j);

/// {"f": [table, ...], "g": [table, ...]}
Json tables_to_json(const LongCodeAssignment& t);
LongCodeAssignment tables_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tritcert
