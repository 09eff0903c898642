#pragma once

#include <memory>
#include <string>

namespace quatsurf {

/// One-variable expression over polynomials, exp and trig, parsed from text
/// like "1 + x^2" or "0.5*sin(x)". Supports symbolic differentiation so
/// profile curves get exact derivative closures.
class Expression {
  public:
    static Expression parse(const std::string& text); // throws ConfigInvalidError
    double operator()(double x) const;
    Expression derivative() const;
    const std::string& text() const { return text_; }

    struct Node;

    Expression();
    Expression(const Expression&);
    Expression(Expression&&) noexcept;
    Expression& operator=(const Expression&);
    Expression& operator=(Expression&&) noexcept;
    ~Expression();

  private:
    explicit Expression(std::shared_ptr<const Node> root, std::string text);
    std::shared_ptr<const Node> root_;
    std::string text_;
};

} // namespace quatsurf
