#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bubblekit/poly_family.hpp"

namespace bubblekit::detail {

struct ParsedExpression {
    PolyFamily value;
    std::optional<unsigned> big_o;  // n from a top-level "O(t^n)" term
};

/// Recursive-descent parser shared by Germ::parse and PolyFamily::parse.
/// When `declared` is null, unknown identifiers become new variables in order
/// of first appearance. `allow_big_o` enables a single top-level O(t^n) term.
ParsedExpression parse_expression(std::string_view text, const std::vector<std::string>* declared,
                                  bool allow_big_o);

}  // namespace bubblekit::detail
