#include "ebsg/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

namespace ebsg {

struct Expression::Node {
    enum class Kind { number, var_x, var_t, negate, add, sub, mul, div, pow, call1, call2 };
    Kind kind = Kind::number;
    double value = 0.0;
    double (*fn1)(double) = nullptr;
    double (*fn2)(double, double) = nullptr;
    std::unique_ptr<Node> lhs;
    std::unique_ptr<Node> rhs;

    double eval(double x, double t) const
    {
        switch (kind) {
        case Kind::number:
            return value;
        case Kind::var_x:
            return x;
        case Kind::var_t:
            return t;
        case Kind::negate:
            return -lhs->eval(x, t);
        case Kind::add:
            return lhs->eval(x, t) + rhs->eval(x, t);
        case Kind::sub:
            return lhs->eval(x, t) - rhs->eval(x, t);
        case Kind::mul:
            return lhs->eval(x, t) * rhs->eval(x, t);
        case Kind::div:
            return lhs->eval(x, t) / rhs->eval(x, t);
        case Kind::pow:
            return std::pow(lhs->eval(x, t), rhs->eval(x, t));
        case Kind::call1:
            return fn1(lhs->eval(x, t));
        case Kind::call2:
            return fn2(lhs->eval(x, t), rhs->eval(x, t));
        }
        return 0.0;
    }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::unique_ptr<Node>;

struct Unary {
    const char* name;
    double (*fn)(double);
};

struct Binary {
    const char* name;
    double (*fn)(double, double);
};

const Unary kUnary[] = {
    {"exp", [](double v) { return std::exp(v); }},   {"log", [](double v) { return std::log(v); }},
    {"sqrt", [](double v) { return std::sqrt(v); }}, {"sin", [](double v) { return std::sin(v); }},
    {"cos", [](double v) { return std::cos(v); }},   {"tan", [](double v) { return std::tan(v); }},
    {"sinh", [](double v) { return std::sinh(v); }}, {"cosh", [](double v) { return std::cosh(v); }},
    {"tanh", [](double v) { return std::tanh(v); }}, {"abs", [](double v) { return std::abs(v); }},
};

const Binary kBinary[] = {
    {"pow", [](double a, double b) { return std::pow(a, b); }},
    {"min", [](double a, double b) { return std::fmin(a, b); }},
    {"max", [](double a, double b) { return std::fmax(a, b); }},
};

NodePtr make(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr)
{
    auto node = std::make_unique<Node>();
    node->kind = kind;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
}

NodePtr make_number(double v)
{
    auto node = make(Node::Kind::number);
    node->value = v;
    return node;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse()
    {
        NodePtr root = expr();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected character");
        }
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ExpressionError("expression '" + std::string(text_) + "': " + what + " at position "
                              + std::to_string(pos_));
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    NodePtr expr()
    {
        NodePtr node = term();
        for (;;) {
            if (accept('+')) {
                node = make(Node::Kind::add, std::move(node), term());
            } else if (accept('-')) {
                node = make(Node::Kind::sub, std::move(node), term());
            } else {
                return node;
            }
        }
    }

    NodePtr term()
    {
        NodePtr node = unary();
        for (;;) {
            if (accept('*')) {
                node = make(Node::Kind::mul, std::move(node), unary());
            } else if (accept('/')) {
                node = make(Node::Kind::div, std::move(node), unary());
            } else {
                return node;
            }
        }
    }

    NodePtr unary()
    {
        if (accept('-')) {
            return make(Node::Kind::negate, unary());
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    // Right-associative; binds tighter than unary minus on its left operand.
    NodePtr power()
    {
        NodePtr base = primary();
        if (accept('^')) {
            return make(Node::Kind::pow, std::move(base), unary());
        }
        return base;
    }

    NodePtr primary()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double v = 0.0;
            const char* first = text_.data() + pos_;
            const char* last = text_.data() + text_.size();
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc()) {
                fail("malformed number");
            }
            pos_ += static_cast<std::size_t>(ptr - first);
            return make_number(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size()
                   && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            const std::string name(text_.substr(start, pos_ - start));
            if (accept('(')) {
                return call(name);
            }
            if (name == "x") {
                return make(Node::Kind::var_x);
            }
            if (name == "t") {
                return make(Node::Kind::var_t);
            }
            if (name == "pi") {
                return make_number(std::numbers::pi);
            }
            if (name == "e") {
                return make_number(std::numbers::e);
            }
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        fail("unexpected character");
    }

    NodePtr call(const std::string& name)
    {
        for (const Unary& u : kUnary) {
            if (name == u.name) {
                NodePtr arg = expr();
                expect(')');
                NodePtr node = make(Node::Kind::call1, std::move(arg));
                node->fn1 = u.fn;
                return node;
            }
        }
        for (const Binary& b : kBinary) {
            if (name == b.name) {
                NodePtr first = expr();
                expect(',');
                NodePtr second = expr();
                expect(')');
                NodePtr node = make(Node::Kind::call2, std::move(first), std::move(second));
                node->fn2 = b.fn;
                return node;
            }
        }
        fail("unknown function '" + name + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(std::string_view text)
{
    Expression e;
    e.root_ = Parser(text).parse();
    e.source_ = std::string(text);
    return e;
}

double Expression::operator()(double x, double t) const
{
    if (!root_) {
        throw ExpressionError("expression: evaluating an empty expression");
    }
    return root_->eval(x, t);
}

}  // namespace ebsg
