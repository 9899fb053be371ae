#include "unitsecant/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <system_error>
#include <utility>

namespace unitsecant {

struct Expr::Node {
    enum class Kind { Number, Variable, Negate, Binary, Call };

    Kind kind = Kind::Number;
    double number = 0.0;
    std::string name;  // variable name, or "pi"/"e" for named constants
    BinaryOp op = BinaryOp::Add;
    Function fn = Function::Sin;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    bool has_variable = false;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

constexpr std::array<std::pair<std::string_view, Function>, 10> kFunctions{{
    {"sin", Function::Sin},
    {"cos", Function::Cos},
    {"tan", Function::Tan},
    {"exp", Function::Exp},
    {"ln", Function::Ln},
    {"sqrt", Function::Sqrt},
    {"cbrt", Function::Cbrt},
    {"abs", Function::Abs},
    {"sign", Function::Sign},
    {"pow", Function::Pow},
}};

int arity(Function fn) { return fn == Function::Pow ? 2 : 1; }

std::optional<Function> lookup_function(std::string_view name) {
    for (const auto& [text, fn] : kFunctions) {
        if (text == name) return fn;
    }
    return std::nullopt;
}

std::string format_number(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

char op_symbol(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return '+';
        case BinaryOp::Sub: return '-';
        case BinaryOp::Mul: return '*';
        case BinaryOp::Div: return '/';
        case BinaryOp::Pow: return '^';
    }
    return '?';
}

void print_node(const Expr::Node& node, std::string& out) {
    switch (node.kind) {
        case Kind::Number:
            if (!node.name.empty()) {
                out += node.name;
            } else if (std::signbit(node.number)) {
                out += "(-";
                out += format_number(-node.number);
                out += ')';
            } else {
                out += format_number(node.number);
            }
            return;
        case Kind::Variable:
            out += node.name;
            return;
        case Kind::Negate:
            out += "(-";
            print_node(*node.lhs, out);
            out += ')';
            return;
        case Kind::Binary:
            out += '(';
            print_node(*node.lhs, out);
            out += ' ';
            out += op_symbol(node.op);
            out += ' ';
            print_node(*node.rhs, out);
            out += ')';
            return;
        case Kind::Call:
            out += function_name(node.fn);
            out += '(';
            print_node(*node.lhs, out);
            if (node.rhs) {
                out += ", ";
                print_node(*node.rhs, out);
            }
            out += ')';
            return;
    }
}

std::string describe(const Expr::Node& node) {
    std::string out;
    print_node(node, out);
    return out;
}

NodePtr make_number(double value, std::string name = {}) {
    auto node = std::make_shared<Expr::Node>();
    node->kind = Kind::Number;
    node->number = value;
    node->name = std::move(name);
    return node;
}

NodePtr make_variable(std::string name) {
    auto node = std::make_shared<Expr::Node>();
    node->kind = Kind::Variable;
    node->name = std::move(name);
    node->has_variable = true;
    return node;
}

NodePtr make_negate(NodePtr operand) {
    auto node = std::make_shared<Expr::Node>();
    node->kind = Kind::Negate;
    node->has_variable = operand->has_variable;
    node->lhs = std::move(operand);
    return node;
}

NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
    auto node = std::make_shared<Expr::Node>();
    node->kind = Kind::Binary;
    node->op = op;
    node->has_variable = lhs->has_variable || rhs->has_variable;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
}

NodePtr make_call(Function fn, NodePtr arg0, NodePtr arg1 = nullptr) {
    auto node = std::make_shared<Expr::Node>();
    node->kind = Kind::Call;
    node->fn = fn;
    node->has_variable = arg0->has_variable || (arg1 && arg1->has_variable);
    node->lhs = std::move(arg0);
    node->rhs = std::move(arg1);
    return node;
}

// ---------------------------------------------------------------------------
// Parser

bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse_all() {
        skip_ws();
        if (at_end()) fail("expression");
        NodePtr root = parse_expr();
        skip_ws();
        if (!at_end()) fail("operator or end of input");
        return root;
    }

    std::optional<std::string> variable() const { return variable_; }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    std::optional<std::string> variable_;

    [[noreturn]] void fail(std::string expected) const { throw ParseError(pos_, std::move(expected)); }

    bool at_end() const { return pos_ >= src_.size(); }

    void skip_ws() {
        while (!at_end() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                             src_[pos_] == '\r')) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (!at_end() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("'") + c + "'");
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = make_binary(BinaryOp::Add, lhs, parse_term());
            } else if (accept('-')) {
                lhs = make_binary(BinaryOp::Sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            if (accept('*')) {
                lhs = make_binary(BinaryOp::Mul, lhs, parse_factor());
            } else if (accept('/')) {
                lhs = make_binary(BinaryOp::Div, lhs, parse_factor());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_factor() {
        if (accept('-')) return make_negate(parse_power());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (accept('^')) return make_binary(BinaryOp::Pow, base, parse_factor());
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (at_end()) fail("number, constant, variable, function call or '('");
        const char c = src_[pos_];
        if (is_digit(c) || c == '.') return parse_number();
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            expect(')');
            return inner;
        }
        if (is_ident_start(c)) return parse_identifier();
        fail("number, constant, variable, function call or '('");
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        std::size_t p = pos_;
        bool digits = false;
        while (p < src_.size() && is_digit(src_[p])) {
            ++p;
            digits = true;
        }
        if (p < src_.size() && src_[p] == '.') {
            ++p;
            while (p < src_.size() && is_digit(src_[p])) {
                ++p;
                digits = true;
            }
        }
        if (!digits) fail("digits");
        if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
            if (q < src_.size() && is_digit(src_[q])) {
                while (q < src_.size() && is_digit(src_[q])) ++q;
                p = q;
            }
        }
        double value = 0.0;
        auto [end, ec] = std::from_chars(src_.data() + start, src_.data() + p, value);
        if (ec != std::errc() || end != src_.data() + p || !std::isfinite(value)) {
            fail("finite number literal");
        }
        pos_ = p;
        return make_number(value);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (!at_end() && is_ident_char(src_[pos_])) ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);

        if (auto fn = lookup_function(name)) {
            expect('(');
            NodePtr arg0 = parse_expr();
            NodePtr arg1;
            if (arity(*fn) == 2) {
                expect(',');
                arg1 = parse_expr();
            }
            expect(')');
            return make_call(*fn, std::move(arg0), std::move(arg1));
        }
        if (name == "pi") return make_number(std::numbers::pi, "pi");
        if (name == "e") return make_number(std::numbers::e, "e");

        skip_ws();
        if (!at_end() && src_[pos_] == '(') {
            pos_ = start;
            fail("known function name");
        }
        if (variable_ && *variable_ != name) {
            pos_ = start;
            fail("variable '" + *variable_ + "' (expressions are single-variable)");
        }
        variable_ = std::string(name);
        return make_variable(std::string(name));
    }
};

// ---------------------------------------------------------------------------
// Evaluation

template <typename T>
T checked(std::string_view what, T argument, T result) {
    if (!std::isfinite(result)) throw DomainError(std::string(what), static_cast<double>(argument));
    return result;
}

template <typename T>
T real_pow(T base, T exponent) {
    if (base < 0 && std::trunc(exponent) != exponent) throw DomainError("pow", static_cast<double>(base));
    return checked<T>("pow", base, std::pow(base, exponent));
}

template <typename T>
T apply(Function fn, T a) {
    switch (fn) {
        case Function::Sin: return checked<T>("sin", a, std::sin(a));
        case Function::Cos: return checked<T>("cos", a, std::cos(a));
        case Function::Tan: return checked<T>("tan", a, std::tan(a));
        case Function::Exp: return checked<T>("exp", a, std::exp(a));
        case Function::Ln:
            if (a <= 0) throw DomainError("ln", static_cast<double>(a));
            return std::log(a);
        case Function::Sqrt:
            if (a < 0) throw DomainError("sqrt", static_cast<double>(a));
            return std::sqrt(a);
        case Function::Cbrt: return std::cbrt(a);
        case Function::Abs: return std::fabs(a);
        case Function::Sign: return a > 0 ? T(1) : (a < 0 ? T(-1) : T(0));
        case Function::Pow: break;
    }
    throw Error("pow requires two arguments");
}

template <typename T>
T apply(BinaryOp op, T a, T b) {
    switch (op) {
        case BinaryOp::Add: return checked<T>("+", a, a + b);
        case BinaryOp::Sub: return checked<T>("-", a, a - b);
        case BinaryOp::Mul: return checked<T>("*", a, a * b);
        case BinaryOp::Div:
            if (b == 0) throw DomainError("/", static_cast<double>(b));
            return checked<T>("/", a, a / b);
        case BinaryOp::Pow: return real_pow(a, b);
    }
    return 0;
}

template <typename T>
T eval_node(const Expr::Node& node, T t) {
    switch (node.kind) {
        case Kind::Number: return static_cast<T>(node.number);
        case Kind::Variable: return t;
        case Kind::Negate: return -eval_node(*node.lhs, t);
        case Kind::Binary: return apply<T>(node.op, eval_node(*node.lhs, t), eval_node(*node.rhs, t));
        case Kind::Call:
            if (node.fn == Function::Pow) {
                return real_pow<T>(eval_node(*node.lhs, t), eval_node(*node.rhs, t));
            }
            return apply<T>(node.fn, eval_node(*node.lhs, t));
    }
    return 0;
}

DualValue dual_pow(const Expr::Node& node, DualValue base, DualValue exponent, double t) {
    const double value = real_pow(base.value, exponent.value);
    double derivative = 0.0;
    if (exponent.derivative == 0.0) {
        if (base.derivative != 0.0) {
            if (base.value == 0.0 && exponent.value < 1.0 && exponent.value != 0.0) {
                throw NotDifferentiable(describe(node), t);
            }
            derivative = exponent.value * std::pow(base.value, exponent.value - 1.0) * base.derivative;
        }
    } else {
        if (base.value <= 0.0) throw NotDifferentiable(describe(node), t);
        derivative = value * (exponent.derivative * std::log(base.value) +
                              exponent.value * base.derivative / base.value);
    }
    return {value, derivative};
}

DualValue dual_node(const Expr::Node& node, double t) {
    if (!node.has_variable) return {eval_node<double>(node, t), 0.0};

    switch (node.kind) {
        case Kind::Number: return {node.number, 0.0};
        case Kind::Variable: return {t, 1.0};
        case Kind::Negate: {
            const DualValue a = dual_node(*node.lhs, t);
            return {-a.value, -a.derivative};
        }
        case Kind::Binary: {
            const DualValue a = dual_node(*node.lhs, t);
            const DualValue b = dual_node(*node.rhs, t);
            switch (node.op) {
                case BinaryOp::Add:
                    return {apply(BinaryOp::Add, a.value, b.value), a.derivative + b.derivative};
                case BinaryOp::Sub:
                    return {apply(BinaryOp::Sub, a.value, b.value), a.derivative - b.derivative};
                case BinaryOp::Mul:
                    return {apply(BinaryOp::Mul, a.value, b.value),
                            a.derivative * b.value + a.value * b.derivative};
                case BinaryOp::Div: {
                    const double q = apply(BinaryOp::Div, a.value, b.value);
                    return {q, (a.derivative - q * b.derivative) / b.value};
                }
                case BinaryOp::Pow: return dual_pow(node, a, b, t);
            }
            break;
        }
        case Kind::Call: {
            const DualValue a = dual_node(*node.lhs, t);
            if (node.fn == Function::Pow) return dual_pow(node, a, dual_node(*node.rhs, t), t);
            const double v = apply(node.fn, a.value);
            switch (node.fn) {
                case Function::Sin: return {v, std::cos(a.value) * a.derivative};
                case Function::Cos: return {v, -std::sin(a.value) * a.derivative};
                case Function::Tan: return {v, (1.0 + v * v) * a.derivative};
                case Function::Exp: return {v, v * a.derivative};
                case Function::Ln: return {v, a.derivative / a.value};
                case Function::Sqrt:
                    if (a.value == 0.0) throw NotDifferentiable(describe(node), t);
                    return {v, a.derivative / (2.0 * v)};
                case Function::Cbrt:
                    if (a.value == 0.0) throw NotDifferentiable(describe(node), t);
                    return {v, a.derivative / (3.0 * v * v)};
                case Function::Abs:
                    if (a.value == 0.0) throw NotDifferentiable(describe(node), t);
                    return {v, a.value > 0.0 ? a.derivative : -a.derivative};
                case Function::Sign:
                    if (a.value == 0.0) throw NotDifferentiable(describe(node), t);
                    return {v, 0.0};
                case Function::Pow: break;
            }
            break;
        }
    }
    return {0.0, 0.0};
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::string expected)
    : Error("parse error at offset " + std::to_string(offset) + ": expected " + expected),
      offset_(offset),
      expected_(std::move(expected)) {}

DomainError::DomainError(std::string function, double argument)
    : Error("domain error: " + function + " at argument " + format_number(argument)),
      function_(std::move(function)),
      argument_(argument) {}

NotDifferentiable::NotDifferentiable(std::string node, double t)
    : Error("not differentiable: " + node + " at t = " + format_number(t)),
      node_(std::move(node)),
      t_(t) {}

ZeroChord::ZeroChord(double t0, double t)
    : Error("zero chord between t0 = " + format_number(t0) + " and t = " + format_number(t)) {}

ZeroDerivativeVector::ZeroDerivativeVector(double t0)
    : Error("derivative vector vanishes at t0 = " + format_number(t0)) {}

std::string_view function_name(Function fn) {
    for (const auto& [text, f] : kFunctions) {
        if (f == fn) return text;
    }
    return "?";
}

Expr::Expr(std::shared_ptr<const Node> root, std::optional<std::string> variable)
    : root_(std::move(root)), variable_(std::move(variable)) {}

Expr Expr::parse(std::string_view source) {
    Parser parser(source);
    NodePtr root = parser.parse_all();
    return Expr(std::move(root), parser.variable());
}

Expr Expr::constant(double value) {
    if (!std::isfinite(value)) throw DomainError("constant", value);
    return Expr(make_number(value), std::nullopt);
}

Expr Expr::variable(std::string name) {
    if (name.empty() || !is_ident_start(name.front()) || lookup_function(name) || name == "pi" ||
        name == "e") {
        throw Error("invalid variable name '" + name + "'");
    }
    for (char c : name) {
        if (!is_ident_char(c)) throw Error("invalid variable name '" + name + "'");
    }
    return Expr(make_variable(name), name);
}

namespace {

std::optional<std::string> merge_variables(const std::optional<std::string>& a,
                                           const std::optional<std::string>& b) {
    if (a && b && *a != *b) {
        throw Error("expressions use different variables '" + *a + "' and '" + *b + "'");
    }
    return a ? a : b;
}

}  // namespace

Expr Expr::negate(Expr operand) {
    return Expr(make_negate(operand.root_), operand.variable_);
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
    auto var = merge_variables(lhs.variable_, rhs.variable_);
    return Expr(make_binary(op, lhs.root_, rhs.root_), std::move(var));
}

Expr Expr::call(Function fn, Expr arg) {
    if (arity(fn) != 1) throw Error(std::string(function_name(fn)) + " takes two arguments");
    return Expr(make_call(fn, arg.root_), arg.variable_);
}

Expr Expr::call(Function fn, Expr arg0, Expr arg1) {
    if (arity(fn) != 2) throw Error(std::string(function_name(fn)) + " takes one argument");
    auto var = merge_variables(arg0.variable_, arg1.variable_);
    return Expr(make_call(fn, arg0.root_, arg1.root_), std::move(var));
}

double Expr::eval(double t) const { return eval_node<double>(*root_, t); }

long double Expr::eval_extended(double t) const {
    return eval_node<long double>(*root_, static_cast<long double>(t));
}

DualValue Expr::eval_dual(double t) const {
    const DualValue result = dual_node(*root_, t);
    if (!std::isfinite(result.derivative)) throw NotDifferentiable(describe(*root_), t);
    return result;
}

std::string Expr::print() const { return describe(*root_); }

}  // namespace unitsecant
