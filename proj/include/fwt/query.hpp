#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fwt/fading.hpp"
#include "fwt/power_opt.hpp"

namespace fwt {

/// Malformed query input. `column` is 1-based within the named argument.
class ParseError : public std::invalid_argument {
public:
    ParseError(std::string argument, std::size_t column, const std::string& what);

    const std::string& argument() const { return argument_; }
    std::size_t column() const { return column_; }

private:
    std::string argument_;
    std::size_t column_;
};

/// A parsed state literal. Forms:
///   state(h1, h2, g1, g2)                 complex gains: 1, -0.5i, 1+2i, 3e-1-2i
///   state(...); state(...)                odd and even slot, for SBA
///   eff(h1, h2, g1, g2)                   effective gains h_k = 2|h_k|^2, >= 0
struct StateLiteral {
    std::vector<ChannelState> states;  // one, or two for an SBA block
    bool effective = false;
};

StateLiteral parse_state_literal(const std::string& text);
/// Comma-separated reals; `argument` names the input in error messages.
std::vector<double> parse_number_list(const std::string& text, const std::string& argument);

struct QueryInput {
    std::string literal;
    std::string scheme;
    std::optional<std::string> powers;  // "p1,p2" or "p1,p2,q1,q2"
    std::optional<std::string> duals;   // "lambda1,lambda2"
};

/// Builds the full report, or throws (ParseError for malformed literals,
/// std::invalid_argument for inconsistent requests) before producing any
/// output.
std::string run_query(const QueryInput& in);

}  // namespace fwt
