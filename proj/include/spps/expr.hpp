#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "spps/errors.hpp"

namespace spps {

/// Immutable expression tree over complex literals, the variable `x`, the
/// operators + - * / ^ and a fixed set of one-argument functions.
///
/// Grammar (whitespace insignificant):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := ('-' | '+') unary | power
///     power   := primary ('^' unary)?
///     primary := number ['i'] | 'i' | 'x' | 'pi' | func '(' expr ')' | '(' expr ')'
///
/// `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`, and is right
/// associative. Its right operand must be a real constant. Functions are sin,
/// cos, tan, sinh, cosh, tanh, exp, sqrt, abs, log (principal branches) and
/// the real-argument Airy functions airy_ai, airy_bi, airy_aip, airy_bip.
class Expression {
public:
    enum class Kind { literal, variable, negate, binary, call };
    enum class Function {
        sin, cos, tan, sinh, cosh, tanh, exp, sqrt, abs, log,
        airy_ai, airy_bi, airy_aip, airy_bip
    };

    struct Node;

    /// Throws ParseError carrying the byte offset of the offending token.
    static Expression parse(std::string_view text);

    static Expression literal(cplx value);
    static Expression variable();
    static Expression negate(Expression operand);
    static Expression binary(char op, Expression lhs, Expression rhs);
    static Expression call(Function fn, Expression arg);

    /// Throws EvalError on division by zero, log(0), or a complex Airy argument.
    cplx eval(double x) const;

    /// True when the tree does not reference `x`.
    bool is_constant() const;

    /// Fully parenthesised text that parses back to an identical tree.
    std::string to_string() const;

    /// The text this expression was parsed from (or to_string() for built trees).
    const std::string& source() const noexcept { return source_; }

    bool structurally_equal(const Expression& other) const;

    const Node& root() const noexcept { return *root_; }

private:
    explicit Expression(std::shared_ptr<const Node> root, std::string source);

    std::shared_ptr<const Node> root_;
    std::string source_;
};

struct Expression::Node {
    Kind kind{Kind::literal};
    cplx value{};
    char op{0};
    Function fn{Function::sin};
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

std::string_view function_name(Expression::Function fn);

/// Parses a constant complex value such as "3", "-0.5", "7+1i" or "2*pi".
cplx parse_constant(std::string_view text);

}  // namespace spps
