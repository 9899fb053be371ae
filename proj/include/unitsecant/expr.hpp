#pragma once

/**
 * Single-variable real expressions.
 *
 * Grammar (whitespace-insensitive):
 *
 *   expr   := term (('+'|'-') term)*
 *   term   := factor (('*'|'/') factor)*
 *   factor := ('-')? power
 *   power  := atom ('^' factor)?
 *   atom   := number | 'pi' | 'e' | var | func '(' expr (',' expr)? ')' | '(' expr ')'
 *
 * Functions: sin cos tan exp ln sqrt cbrt abs sign (one argument), pow (two).
 * An expression mentions at most one variable name.
 */

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "unitsecant/error.hpp"

namespace unitsecant {

/// Forward-mode first-order pair.
struct DualValue {
    double value = 0.0;
    double derivative = 0.0;
};

enum class Function { Sin, Cos, Tan, Exp, Ln, Sqrt, Cbrt, Abs, Sign, Pow };

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

/// Immutable expression tree. Copies share nodes; every operation is const and thread-safe.
class Expr {
public:
    /// Parses `source`; throws ParseError with the byte offset of the first problem.
    static Expr parse(std::string_view source);

    static Expr constant(double value);
    static Expr variable(std::string name);
    static Expr negate(Expr operand);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
    static Expr call(Function fn, Expr arg);
    static Expr call(Function fn, Expr arg0, Expr arg1);

    /// Throws DomainError instead of ever returning NaN or infinity.
    double eval(double t) const;

    /// Same tree evaluated in long double. Used where two nearby values are subtracted.
    long double eval_extended(double t) const;

    /// Value and derivative with respect to the variable. Throws DomainError or NotDifferentiable.
    DualValue eval_dual(double t) const;

    /// Fully parenthesized text that parses back to an identical tree.
    std::string print() const;

    /// Name of the variable the expression mentions, if any.
    const std::optional<std::string>& variable_name() const noexcept { return variable_; }

    bool is_constant() const noexcept { return !variable_.has_value(); }

    struct Node;

private:
    Expr(std::shared_ptr<const Node> root, std::optional<std::string> variable);

    std::shared_ptr<const Node> root_;
    std::optional<std::string> variable_;
};

std::string_view function_name(Function fn);

}  // namespace unitsecant
