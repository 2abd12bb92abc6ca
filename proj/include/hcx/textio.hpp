// Plain-text presentation files.
//
//   name = dual_numbers
//   kind = algebra            # or coalgebra
//   field = Q
//   basis = 1 e
//   degrees = 0 0
//   unit = 1                  # coalgebra: counit = <label>
//
//   [mult]                    # i j k c : b_i b_j += c b_k
//   1 1 1 1
//   [diff]                    # i k c   : d b_i += c b_k
//   [aug]                     # i c
//   1 1
//
// Coalgebras use [comult] with k i j c : Delta b_k += c b_i (x) b_j, and an
// optional "weights = ..." line. Basis elements may be written by label or by
// 0-based index (a label wins over an index); coefficients are integers or
// p/q.
#pragma once

#include "hcx/presentations.hpp"

#include <variant>

namespace hcx {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg);
    int line() const { return line_; }

private:
    int line_;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(ValidationReport r);
    ValidationReport report;
};

using Presentation = std::variant<Algebra, Coalgebra>;

Presentation parse_presentation(const std::string& text);
Presentation read_presentation(const std::string& path);
// A path if one exists, otherwise a builtin algebra name.
Presentation load_presentation(const std::string& arg);

// Throws ValidationError naming the first failing axiom and its witness.
void validate(const Presentation& p);
ValidationReport validation_report(const Presentation& p);
const std::string& presentation_name(const Presentation& p);

std::string to_text(const Algebra& a);
std::string to_text(const Coalgebra& c);

}  // namespace hcx
