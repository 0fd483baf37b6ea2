#ifndef EBSG_EXPRESSION_HPP
#define EBSG_EXPRESSION_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ebsg {

class ExpressionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/** Arithmetic expression in the variables x and t.
 *
 * Supports + - * / ^, parentheses, the constants pi and e, and the functions
 * exp log sqrt sin cos tan sinh cosh tanh abs (one argument) and pow min max
 * (two arguments). Copies share the parsed tree.
 */
class Expression {
public:
    struct Node;

    Expression() = default;
    static Expression parse(std::string_view text);

    double operator()(double x, double t = 0.0) const;
    const std::string& source() const noexcept { return source_; }
    bool empty() const noexcept { return root_ == nullptr; }

private:
    std::shared_ptr<const Node> root_;
    std::string source_;
};

}  // namespace ebsg

#endif
