#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gad/dsl/ast.hpp"

namespace gad::dsl {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int col, std::string message,
               std::vector<std::string> expected = {});

    int line() const { return line_; }
    int col() const { return col_; }
    const std::string& message() const { return message_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    int line_, col_;
    std::string message_;
    std::vector<std::string> expected_;
};

// Parses a .gad document. Sheaf definitions act as abbreviations: uses of
// a sheaf name are replaced by the defined expression, so queries and
// facts always hold fully expanded trees. Throws ParseError.
Document parse(const std::string& text);

// Canonical formatting; parse(pretty_print(d)) is structurally equal to d.
std::string pretty_print(const Document& doc);

// Stable-schema JSON export of the AST (includes source spans).
std::string ast_to_json(const Document& doc);

struct ValidationResult {
    std::vector<std::string> errors;         // reference/bookkeeping failures
    std::vector<std::string> warnings;       // zero sheaves, odd declarations
    std::vector<std::string> derived_flags;  // "linebundle L: +nef" etc.
    bool ok() const { return errors.empty(); }
};

// Flag closure and consistency checks. Mutates the context only by adding
// implied flags (monotone; a second run is a fixed point).
ValidationResult validate(Document& doc);

}  // namespace gad::dsl
