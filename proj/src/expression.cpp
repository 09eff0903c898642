#include "quatsurf/expression.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "quatsurf/errors.hpp"

namespace quatsurf {

namespace {
enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Sinh, Cosh };
} // namespace

struct Expression::Node {
    Op op = Op::Const;
    double value = 0;
    std::shared_ptr<const Node> lhs, rhs;

    double eval(double x) const {
        switch (op) {
        case Op::Const: return value;
        case Op::Var: return x;
        case Op::Add: return lhs->eval(x) + rhs->eval(x);
        case Op::Sub: return lhs->eval(x) - rhs->eval(x);
        case Op::Mul: return lhs->eval(x) * rhs->eval(x);
        case Op::Div: return lhs->eval(x) / rhs->eval(x);
        case Op::Pow: return std::pow(lhs->eval(x), rhs->value);
        case Op::Neg: return -lhs->eval(x);
        case Op::Sin: return std::sin(lhs->eval(x));
        case Op::Cos: return std::cos(lhs->eval(x));
        case Op::Exp: return std::exp(lhs->eval(x));
        case Op::Sinh: return std::sinh(lhs->eval(x));
        case Op::Cosh: return std::cosh(lhs->eval(x));
        }
        return 0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr mk(Op op, NodePtr l = nullptr, NodePtr r = nullptr, double v = 0) {
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->value = v;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}
NodePtr cst(double v) { return mk(Op::Const, nullptr, nullptr, v); }

NodePtr diff(const NodePtr& n) {
    switch (n->op) {
    case Op::Const: return cst(0);
    case Op::Var: return cst(1);
    case Op::Add: return mk(Op::Add, diff(n->lhs), diff(n->rhs));
    case Op::Sub: return mk(Op::Sub, diff(n->lhs), diff(n->rhs));
    case Op::Mul:
        return mk(Op::Add, mk(Op::Mul, diff(n->lhs), n->rhs),
                  mk(Op::Mul, n->lhs, diff(n->rhs)));
    case Op::Div:
        return mk(Op::Div,
                  mk(Op::Sub, mk(Op::Mul, diff(n->lhs), n->rhs),
                     mk(Op::Mul, n->lhs, diff(n->rhs))),
                  mk(Op::Mul, n->rhs, n->rhs));
    case Op::Pow: // integer exponent only
        return mk(Op::Mul, cst(n->rhs->value),
                  mk(Op::Mul, mk(Op::Pow, n->lhs, cst(n->rhs->value - 1)), diff(n->lhs)));
    case Op::Neg: return mk(Op::Neg, diff(n->lhs));
    case Op::Sin: return mk(Op::Mul, mk(Op::Cos, n->lhs), diff(n->lhs));
    case Op::Cos: return mk(Op::Neg, mk(Op::Mul, mk(Op::Sin, n->lhs), diff(n->lhs)));
    case Op::Exp: return mk(Op::Mul, mk(Op::Exp, n->lhs), diff(n->lhs));
    case Op::Sinh: return mk(Op::Mul, mk(Op::Cosh, n->lhs), diff(n->lhs));
    case Op::Cosh: return mk(Op::Mul, mk(Op::Sinh, n->lhs), diff(n->lhs));
    }
    return cst(0);
}

class Parser {
  public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr run() {
        auto n = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return n;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) {
        std::ostringstream os;
        os << "expression parse error at offset " << pos_ << ": " << what << " in \"" << s_
           << "\"";
        throw ConfigInvalidError(os.str());
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    NodePtr expr() {
        auto n = term();
        for (;;) {
            if (eat('+'))
                n = mk(Op::Add, n, term());
            else if (eat('-'))
                n = mk(Op::Sub, n, term());
            else
                return n;
        }
    }
    NodePtr term() {
        auto n = unary();
        for (;;) {
            if (eat('*'))
                n = mk(Op::Mul, n, unary());
            else if (eat('/'))
                n = mk(Op::Div, n, unary());
            else
                return n;
        }
    }
    NodePtr unary() {
        if (eat('-')) return mk(Op::Neg, unary());
        (void)eat('+');
        return power();
    }
    NodePtr power() {
        auto base = primary();
        if (eat('^')) {
            skip();
            const bool neg = eat('-');
            auto e = number();
            double ev = e->value * (neg ? -1 : 1);
            if (ev != std::floor(ev)) fail("only integer exponents are supported");
            return mk(Op::Pow, base, cst(ev));
        }
        return base;
    }
    NodePtr number() {
        skip();
        std::size_t end = pos_;
        while (end < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.'))
            ++end;
        if (end == pos_) fail("expected number");
        double v = std::stod(s_.substr(pos_, end - pos_));
        pos_ = end;
        return cst(v);
    }
    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            auto n = expr();
            if (!eat(')')) fail("expected ')'");
            return n;
        }
        // identifier: x or a function name
        std::size_t end = pos_;
        while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
        const std::string id = s_.substr(pos_, end - pos_);
        pos_ = end;
        if (id == "x") return mk(Op::Var);
        static const std::map<std::string, Op> funcs = {{"sin", Op::Sin},
                                                        {"cos", Op::Cos},
                                                        {"exp", Op::Exp},
                                                        {"sinh", Op::Sinh},
                                                        {"cosh", Op::Cosh}};
        auto it = funcs.find(id);
        if (it == funcs.end()) fail("unknown identifier '" + id + "'");
        if (!eat('(')) fail("expected '(' after function name");
        auto arg = expr();
        if (!eat(')')) fail("expected ')'");
        return mk(it->second, arg);
    }
};

std::string derivText(const std::string& t) { return "d/dx(" + t + ")"; }

} // namespace

Expression::Expression() : root_(cst(0)), text_("0") {}
Expression::Expression(const Expression&) = default;
Expression::Expression(Expression&&) noexcept = default;
Expression& Expression::operator=(const Expression&) = default;
Expression& Expression::operator=(Expression&&) noexcept = default;
Expression::~Expression() = default;

Expression::Expression(std::shared_ptr<const Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}

Expression Expression::parse(const std::string& text) {
    return Expression(Parser(text).run(), text);
}

double Expression::operator()(double x) const { return root_->eval(x); }

Expression Expression::derivative() const {
    return Expression(diff(root_), derivText(text_));
}

} // namespace quatsurf
