#include "spps/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

#include <boost/math/special_functions/airy.hpp>

namespace spps {

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

struct FunctionEntry {
    std::string_view name;
    Expression::Function fn;
};

constexpr std::array<FunctionEntry, 14> kFunctions{{
    {"sin", Expression::Function::sin},
    {"cos", Expression::Function::cos},
    {"tan", Expression::Function::tan},
    {"sinh", Expression::Function::sinh},
    {"cosh", Expression::Function::cosh},
    {"tanh", Expression::Function::tanh},
    {"exp", Expression::Function::exp},
    {"sqrt", Expression::Function::sqrt},
    {"abs", Expression::Function::abs},
    {"log", Expression::Function::log},
    {"airy_ai", Expression::Function::airy_ai},
    {"airy_bi", Expression::Function::airy_bi},
    {"airy_aip", Expression::Function::airy_aip},
    {"airy_bip", Expression::Function::airy_bip},
}};

std::optional<Expression::Function> lookup_function(std::string_view name) {
    for (const auto& entry : kFunctions) {
        if (entry.name == name) return entry.fn;
    }
    return std::nullopt;
}

NodePtr make_node(Expression::Node node) {
    return std::make_shared<const Expression::Node>(std::move(node));
}

bool references_variable(const Expression::Node& n) {
    switch (n.kind) {
        case Expression::Kind::literal: return false;
        case Expression::Kind::variable: return true;
        case Expression::Kind::negate:
        case Expression::Kind::call: return references_variable(*n.lhs);
        case Expression::Kind::binary:
            return references_variable(*n.lhs) || references_variable(*n.rhs);
    }
    return false;
}

cplx int_power(cplx base, long long n, double x) {
    if (n < 0) {
        if (base == cplx{}) throw EvalError("division by zero in negative power", x);
        return cplx{1.0} / int_power(base, -n, x);
    }
    cplx result{1.0};
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

double real_airy_argument(cplx z, double x) {
    if (z.imag() != 0.0) throw EvalError("Airy functions need a real argument", x);
    return z.real();
}

cplx eval_node(const Expression::Node& n, double x) {
    switch (n.kind) {
        case Expression::Kind::literal: return n.value;
        case Expression::Kind::variable: return cplx{x};
        case Expression::Kind::negate: return cplx(0.0) - eval_node(*n.lhs, x);
        case Expression::Kind::binary: {
            const cplx l = eval_node(*n.lhs, x);
            const cplx r = eval_node(*n.rhs, x);
            switch (n.op) {
                case '+': return l + r;
                case '-': return l - r;
                case '*': return l * r;
                case '/':
                    if (r == cplx{}) throw EvalError("division by zero", x);
                    return l / r;
                case '^': {
                    const double e = r.real();
                    if (e == std::trunc(e) && std::abs(e) <= 64.0) {
                        return int_power(l, static_cast<long long>(e), x);
                    }
                    if (l.imag() == 0.0 && l.real() > 0.0) return cplx{std::pow(l.real(), e)};
                    return std::pow(l, e);
                }
            }
            break;
        }
        case Expression::Kind::call: {
            const cplx a = eval_node(*n.lhs, x);
            using F = Expression::Function;
            switch (n.fn) {
                case F::sin: return std::sin(a);
                case F::cos: return std::cos(a);
                case F::tan: return std::tan(a);
                case F::sinh: return std::sinh(a);
                case F::cosh: return std::cosh(a);
                case F::tanh: return std::tanh(a);
                case F::exp: return std::exp(a);
                case F::sqrt: return std::sqrt(a);
                case F::abs: return cplx{std::abs(a)};
                case F::log:
                    if (a == cplx{}) throw EvalError("log of zero", x);
                    return std::log(a);
                case F::airy_ai: return boost::math::airy_ai(real_airy_argument(a, x));
                case F::airy_bi: return boost::math::airy_bi(real_airy_argument(a, x));
                case F::airy_aip: return boost::math::airy_ai_prime(real_airy_argument(a, x));
                case F::airy_bip: return boost::math::airy_bi_prime(real_airy_argument(a, x));
            }
            break;
        }
    }
    throw EvalError("malformed expression node", x);
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void print_node(const Expression::Node& n, std::string& out) {
    switch (n.kind) {
        case Expression::Kind::literal:
            if (n.value.imag() != 0.0) {
                out += format_real(n.value.imag());
                out += 'i';
            } else {
                out += format_real(n.value.real());
            }
            return;
        case Expression::Kind::variable: out += 'x'; return;
        case Expression::Kind::negate:
            out += "(-";
            print_node(*n.lhs, out);
            out += ')';
            return;
        case Expression::Kind::binary:
            out += '(';
            print_node(*n.lhs, out);
            out += n.op;
            print_node(*n.rhs, out);
            out += ')';
            return;
        case Expression::Kind::call:
            out += function_name(n.fn);
            out += '(';
            print_node(*n.lhs, out);
            out += ')';
            return;
    }
}

bool nodes_equal(const Expression::Node& a, const Expression::Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expression::Kind::literal: return a.value == b.value;
        case Expression::Kind::variable: return true;
        case Expression::Kind::negate: return nodes_equal(*a.lhs, *b.lhs);
        case Expression::Kind::call: return a.fn == b.fn && nodes_equal(*a.lhs, *b.lhs);
        case Expression::Kind::binary:
            return a.op == b.op && nodes_equal(*a.lhs, *b.lhs) && nodes_equal(*a.rhs, *b.rhs);
    }
    return false;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse_all() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
        NodePtr n = parse_expr();
        skip_space();
        if (pos_ < text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
        return n;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            skip_space();
            if (accept('+')) {
                lhs = binary('+', lhs, parse_term());
            } else if (accept('-')) {
                lhs = binary('-', lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = binary('*', lhs, parse_unary());
            } else if (accept('/')) {
                lhs = binary('/', lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) {
            Expression::Node n;
            n.kind = Expression::Kind::negate;
            n.lhs = parse_unary();
            return make_node(std::move(n));
        }
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        skip_space();
        const std::size_t at = pos_;
        if (!accept('^')) return base;
        NodePtr exponent = parse_unary();
        if (references_variable(*exponent)) {
            throw ParseError("exponent must be constant", at);
        }
        const cplx e = eval_node(*exponent, 0.0);
        if (e.imag() != 0.0 || !std::isfinite(e.real())) {
            throw ParseError("exponent must be a finite real constant", at);
        }
        return binary('^', base, exponent);
    }

    NodePtr parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        auto digits = [&] {
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
        };
        digits();
        if (end < text_.size() && text_[end] == '.') {
            ++end;
            digits();
        }
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t probe = end + 1;
            if (probe < text_.size() && (text_[probe] == '+' || text_[probe] == '-')) ++probe;
            if (probe < text_.size() && std::isdigit(static_cast<unsigned char>(text_[probe]))) {
                end = probe;
                digits();
            }
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + end, value);
        if (ec != std::errc{} || ptr != text_.data() + end) {
            throw ParseError("malformed number", start);
        }
        pos_ = end;
        Expression::Node n;
        n.kind = Expression::Kind::literal;
        n.value = cplx{value};
        if (pos_ < text_.size() && text_[pos_] == 'i' &&
            (pos_ + 1 >= text_.size() || !(std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])) || text_[pos_ + 1] == '_'))) {
            ++pos_;
            n.value = cplx{0.0, value};
        }
        return make_node(std::move(n));
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);
        Expression::Node n;
        if (name == "x") {
            n.kind = Expression::Kind::variable;
            return make_node(std::move(n));
        }
        if (name == "i") {
            n.kind = Expression::Kind::literal;
            n.value = cplx{0.0, 1.0};
            return make_node(std::move(n));
        }
        if (name == "pi") {
            n.kind = Expression::Kind::literal;
            n.value = cplx{std::numbers::pi};
            return make_node(std::move(n));
        }
        if (auto fn = lookup_function(name)) {
            expect('(');
            n.kind = Expression::Kind::call;
            n.fn = *fn;
            n.lhs = parse_expr();
            expect(')');
            return make_node(std::move(n));
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    static NodePtr binary(char op, NodePtr lhs, NodePtr rhs) {
        Expression::Node n;
        n.kind = Expression::Kind::binary;
        n.op = op;
        n.lhs = std::move(lhs);
        n.rhs = std::move(rhs);
        return make_node(std::move(n));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string_view function_name(Expression::Function fn) {
    for (const auto& entry : kFunctions) {
        if (entry.fn == fn) return entry.name;
    }
    return "?";
}

Expression::Expression(std::shared_ptr<const Node> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

Expression Expression::parse(std::string_view text) {
    Parser parser(text);
    return Expression(parser.parse_all(), std::string(text));
}

Expression Expression::literal(cplx value) {
    Node n;
    n.kind = Kind::literal;
    n.value = value;
    auto root = make_node(std::move(n));
    std::string text;
    print_node(*root, text);
    return Expression(root, text);
}

Expression Expression::variable() {
    Node n;
    n.kind = Kind::variable;
    return Expression(make_node(std::move(n)), "x");
}

Expression Expression::negate(Expression operand) {
    Node n;
    n.kind = Kind::negate;
    n.lhs = operand.root_;
    auto root = make_node(std::move(n));
    std::string text;
    print_node(*root, text);
    return Expression(root, text);
}

Expression Expression::binary(char op, Expression lhs, Expression rhs) {
    Node n;
    n.kind = Kind::binary;
    n.op = op;
    n.lhs = lhs.root_;
    n.rhs = rhs.root_;
    auto root = make_node(std::move(n));
    std::string text;
    print_node(*root, text);
    return Expression(root, text);
}

Expression Expression::call(Function fn, Expression arg) {
    Node n;
    n.kind = Kind::call;
    n.fn = fn;
    n.lhs = arg.root_;
    auto root = make_node(std::move(n));
    std::string text;
    print_node(*root, text);
    return Expression(root, text);
}

cplx Expression::eval(double x) const { return eval_node(*root_, x); }

bool Expression::is_constant() const { return !references_variable(*root_); }

std::string Expression::to_string() const {
    std::string out;
    print_node(*root_, out);
    return out;
}

bool Expression::structurally_equal(const Expression& other) const {
    return nodes_equal(*root_, *other.root_);
}

cplx parse_constant(std::string_view text) {
    const Expression e = Expression::parse(text);
    if (!e.is_constant()) throw ParseError("expected a constant, found a reference to x", 0);
    return e.eval(0.0);
}

}  // namespace spps
