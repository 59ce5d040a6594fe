#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isocurve/errors.hpp"
#include "isocurve/fmt.hpp"
#include "isocurve/jet.hpp"

namespace isocurve {

enum class NodeKind : std::uint8_t {
    kConstant,
    kVariable,
    kNeg,
    kSin,
    kCos,
    kTan,
    kSinh,
    kCosh,
    kExp,
    kLog,
    kSqrt,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kPow,
};

struct ExprNode {
    NodeKind kind = NodeKind::kConstant;
    std::uint32_t offset = 0; // byte offset of the token that produced this node
    double value = 0.0;       // constant value; for kPow the folded exponent
    int a = -1;
    int b = -1;
    int var = -1; // variable index for kVariable
};

namespace detail {

inline double scalarOf(double x) { return x; }
template <int N>
double scalarOf(const Jet<N>& x) {
    return x.val;
}

} // namespace detail

/// Parsed expression over a fixed ordered list of variables.
///
/// Grammar (infix, radians): `+ - * /`, unary minus, `^` with a constant
/// exponent, parentheses, and the functions sin, cos, tan, sinh, cosh,
/// exp, log, sqrt. `^` binds tighter than unary minus and is
/// right-associative; there is no implicit multiplication. Exponents are
/// folded to a number at parse time; integer exponents evaluate by
/// repeated multiplication.
class ExprAst {
public:
    ExprAst() = default;

    int arity() const { return static_cast<int>(vars_.size()); }
    const std::vector<std::string>& variables() const { return vars_; }
    const std::string& source() const { return source_; }
    bool empty() const { return root_ < 0; }

    /// Evaluates with any scalar-like type carrying arithmetic and the
    /// supported math functions; used with double, Jet<1> and Jet<2>.
    template <class J>
    J evalWith(std::span<const J> vars) const {
        if (static_cast<int>(vars.size()) != arity())
            throw UsageError("expression expects " + std::to_string(arity()) +
                             " variable value(s), got " + std::to_string(vars.size()));
        return evalNode<J>(root_, vars);
    }

    double value(std::span<const double> vars) const { return evalWith<double>(vars); }

    Jet<1> jet1(double t) const {
        const Jet<1> v[] = {Jet<1>::variable(t, 0)};
        return evalWith<Jet<1>>(v);
    }

    Jet<2> jet2(double u, double v) const {
        const Jet<2> vv[] = {Jet<2>::variable(u, 0), Jet<2>::variable(v, 1)};
        return evalWith<Jet<2>>(vv);
    }

    /// Minimal-parenthesis rendering; parsing the result reproduces the
    /// same tree (offsets aside).
    std::string print() const {
        std::string out;
        printNode(root_, out);
        return out;
    }

    /// Structural equality ignoring source offsets.
    bool sameStructure(const ExprAst& other) const {
        if (vars_ != other.vars_) return false;
        return sameSubtree(root_, other, other.root_);
    }

private:
    friend class ExprParser;

    template <class J>
    J evalNode(int idx, std::span<const J> vars) const {
        using std::cos;
        using std::cosh;
        using std::exp;
        using std::log;
        using std::sin;
        using std::sinh;
        using std::sqrt;
        using std::tan;
        const ExprNode& n = nodes_[static_cast<std::size_t>(idx)];
        switch (n.kind) {
        case NodeKind::kConstant:
            return J(n.value);
        case NodeKind::kVariable:
            return vars[static_cast<std::size_t>(n.var)];
        case NodeKind::kNeg:
            return -evalNode<J>(n.a, vars);
        case NodeKind::kSin:
            return sin(evalNode<J>(n.a, vars));
        case NodeKind::kCos:
            return cos(evalNode<J>(n.a, vars));
        case NodeKind::kTan:
            return tan(evalNode<J>(n.a, vars));
        case NodeKind::kSinh:
            return sinh(evalNode<J>(n.a, vars));
        case NodeKind::kCosh:
            return cosh(evalNode<J>(n.a, vars));
        case NodeKind::kExp:
            return exp(evalNode<J>(n.a, vars));
        case NodeKind::kLog: {
            J x = evalNode<J>(n.a, vars);
            if (!(detail::scalarOf(x) > 0.0))
                throw EvalError("log requires a positive argument", n.offset);
            return log(x);
        }
        case NodeKind::kSqrt: {
            J x = evalNode<J>(n.a, vars);
            const double v = detail::scalarOf(x);
            if (v < 0.0) throw EvalError("sqrt of a negative value", n.offset);
            if (v == 0.0) throw EvalError("sqrt derivative is singular at zero", n.offset);
            return sqrt(x);
        }
        case NodeKind::kAdd:
            return evalNode<J>(n.a, vars) + evalNode<J>(n.b, vars);
        case NodeKind::kSub:
            return evalNode<J>(n.a, vars) - evalNode<J>(n.b, vars);
        case NodeKind::kMul:
            return evalNode<J>(n.a, vars) * evalNode<J>(n.b, vars);
        case NodeKind::kDiv: {
            J num = evalNode<J>(n.a, vars);
            J den = evalNode<J>(n.b, vars);
            if (detail::scalarOf(den) == 0.0) throw EvalError("division by zero", n.offset);
            return num / den;
        }
        case NodeKind::kPow: {
            J base = evalNode<J>(n.a, vars);
            long long ip = 0;
            if (integerExponent(n.value, ip)) {
                if (ip < 0 && detail::scalarOf(base) == 0.0)
                    throw EvalError("zero base with a negative exponent", n.offset);
                return powInt(base, ip);
            }
            if (!(detail::scalarOf(base) > 0.0))
                throw EvalError("non-integer exponent requires a positive base", n.offset);
            return powReal(base, n.value);
        }
        }
        throw InternalCheckError("corrupt expression node");
    }

    static bool integerExponent(double e, long long& out) {
        if (!(std::fabs(e) <= 9.0e15)) return false;
        if (std::nearbyint(e) != e) return false;
        out = static_cast<long long>(e);
        return true;
    }

    static int precedence(NodeKind k) {
        switch (k) {
        case NodeKind::kAdd:
        case NodeKind::kSub:
            return 1;
        case NodeKind::kMul:
        case NodeKind::kDiv:
            return 2;
        case NodeKind::kNeg:
            return 3;
        case NodeKind::kPow:
            return 4;
        default:
            return 6;
        }
    }

    static const char* functionName(NodeKind k) {
        switch (k) {
        case NodeKind::kSin: return "sin";
        case NodeKind::kCos: return "cos";
        case NodeKind::kTan: return "tan";
        case NodeKind::kSinh: return "sinh";
        case NodeKind::kCosh: return "cosh";
        case NodeKind::kExp: return "exp";
        case NodeKind::kLog: return "log";
        case NodeKind::kSqrt: return "sqrt";
        default: return nullptr;
        }
    }

    void printChild(int idx, std::string& out, bool parens) const {
        if (parens) out += '(';
        printNode(idx, out);
        if (parens) out += ')';
    }

    void printNode(int idx, std::string& out) const {
        const ExprNode& n = nodes_[static_cast<std::size_t>(idx)];
        switch (n.kind) {
        case NodeKind::kConstant:
            out += formatDouble(n.value);
            return;
        case NodeKind::kVariable:
            out += vars_[static_cast<std::size_t>(n.var)];
            return;
        case NodeKind::kNeg:
            out += '-';
            printChild(n.a, out, precedence(nodes_[static_cast<std::size_t>(n.a)].kind) < 4);
            return;
        case NodeKind::kAdd:
        case NodeKind::kSub: {
            printNode(n.a, out);
            out += n.kind == NodeKind::kAdd ? '+' : '-';
            printChild(n.b, out, precedence(nodes_[static_cast<std::size_t>(n.b)].kind) <= 1);
            return;
        }
        case NodeKind::kMul:
        case NodeKind::kDiv: {
            printChild(n.a, out, precedence(nodes_[static_cast<std::size_t>(n.a)].kind) < 2);
            out += n.kind == NodeKind::kMul ? '*' : '/';
            printChild(n.b, out, precedence(nodes_[static_cast<std::size_t>(n.b)].kind) <= 2);
            return;
        }
        case NodeKind::kPow: {
            printChild(n.a, out, precedence(nodes_[static_cast<std::size_t>(n.a)].kind) <= 4);
            out += '^';
            if (n.value < 0.0) {
                out += '-';
                out += formatDouble(-n.value);
            } else {
                out += formatDouble(n.value);
            }
            return;
        }
        default: {
            out += functionName(n.kind);
            out += '(';
            printNode(n.a, out);
            out += ')';
            return;
        }
        }
    }

    bool sameSubtree(int idx, const ExprAst& other, int oidx) const {
        if ((idx < 0) != (oidx < 0)) return false;
        if (idx < 0) return true;
        const ExprNode& n = nodes_[static_cast<std::size_t>(idx)];
        const ExprNode& m = other.nodes_[static_cast<std::size_t>(oidx)];
        if (n.kind != m.kind || n.var != m.var || n.value != m.value) return false;
        return sameSubtree(n.a, other, m.a) && sameSubtree(n.b, other, m.b);
    }

    std::vector<ExprNode> nodes_;
    int root_ = -1;
    std::vector<std::string> vars_;
    std::string source_;
};

class ExprParser {
public:
    ExprParser(std::string_view source, std::vector<std::string> variables)
        : src_(source) {
        ast_.vars_ = std::move(variables);
        ast_.source_.assign(source.begin(), source.end());
    }

    ExprAst run() {
        next();
        if (tok_.type == TokType::kEnd) throw ParseError("empty expression", 0);
        ast_.root_ = parseSum();
        if (tok_.type != TokType::kEnd)
            throw ParseError("unexpected token '" + tok_.text + "'", tok_.offset);
        return std::move(ast_);
    }

private:
    enum class TokType : std::uint8_t {
        kNumber,
        kIdent,
        kPlus,
        kMinus,
        kStar,
        kSlash,
        kCaret,
        kLParen,
        kRParen,
        kEnd,
    };

    struct Token {
        TokType type = TokType::kEnd;
        double num = 0.0;
        std::string text;
        std::uint32_t offset = 0;
    };

    static bool isIdentStart(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool isIdentChar(char c) { return isIdentStart(c) || (c >= '0' && c <= '9'); }
    static bool isDigit(char c) { return c >= '0' && c <= '9'; }

    void next() {
        while (pos_ < src_.size() &&
               (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                src_[pos_] == '\r'))
            ++pos_;
        tok_ = Token{};
        tok_.offset = static_cast<std::uint32_t>(pos_);
        if (pos_ >= src_.size()) {
            tok_.type = TokType::kEnd;
            return;
        }
        const char c = src_[pos_];
        if (isDigit(c) || c == '.') {
            const char* begin = src_.data() + pos_;
            const char* end = src_.data() + src_.size();
            double v = 0.0;
            const auto res = std::from_chars(begin, end, v);
            if (res.ec != std::errc{} || res.ptr == begin)
                throw ParseError("invalid numeric literal", pos_);
            tok_.type = TokType::kNumber;
            tok_.num = v;
            tok_.text.assign(begin, res.ptr);
            pos_ += static_cast<std::size_t>(res.ptr - begin);
            return;
        }
        if (isIdentStart(c)) {
            std::size_t e = pos_;
            while (e < src_.size() && isIdentChar(src_[e])) ++e;
            tok_.type = TokType::kIdent;
            tok_.text.assign(src_.substr(pos_, e - pos_));
            pos_ = e;
            return;
        }
        switch (c) {
        case '+': tok_.type = TokType::kPlus; break;
        case '-': tok_.type = TokType::kMinus; break;
        case '*': tok_.type = TokType::kStar; break;
        case '/': tok_.type = TokType::kSlash; break;
        case '^': tok_.type = TokType::kCaret; break;
        case '(': tok_.type = TokType::kLParen; break;
        case ')': tok_.type = TokType::kRParen; break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", pos_);
        }
        tok_.text = c;
        ++pos_;
    }

    int addNode(ExprNode n) {
        ast_.nodes_.push_back(n);
        return static_cast<int>(ast_.nodes_.size()) - 1;
    }

    int parseSum() {
        int lhs = parseTerm();
        while (tok_.type == TokType::kPlus || tok_.type == TokType::kMinus) {
            ExprNode n;
            n.kind = tok_.type == TokType::kPlus ? NodeKind::kAdd : NodeKind::kSub;
            n.offset = tok_.offset;
            next();
            n.a = lhs;
            n.b = parseTerm();
            lhs = addNode(n);
        }
        return lhs;
    }

    int parseTerm() {
        int lhs = parseUnary();
        while (tok_.type == TokType::kStar || tok_.type == TokType::kSlash) {
            ExprNode n;
            n.kind = tok_.type == TokType::kStar ? NodeKind::kMul : NodeKind::kDiv;
            n.offset = tok_.offset;
            next();
            n.a = lhs;
            n.b = parseUnary();
            lhs = addNode(n);
        }
        return lhs;
    }

    int parseUnary() {
        if (tok_.type == TokType::kMinus) {
            ExprNode n;
            n.kind = NodeKind::kNeg;
            n.offset = tok_.offset;
            next();
            n.a = parseUnary();
            return addNode(n);
        }
        return parsePower();
    }

    int parsePower() {
        int base = parsePrimary();
        if (tok_.type != TokType::kCaret) return base;
        ExprNode n;
        n.kind = NodeKind::kPow;
        n.offset = tok_.offset;
        next();
        const int expRoot = parseUnary(); // right-associative
        requireConstant(expRoot);
        n.a = base;
        n.value = foldConstant(expRoot, n.offset);
        return addNode(n);
    }

    int parsePrimary() {
        switch (tok_.type) {
        case TokType::kNumber: {
            ExprNode n;
            n.kind = NodeKind::kConstant;
            n.offset = tok_.offset;
            n.value = tok_.num;
            next();
            return addNode(n);
        }
        case TokType::kLParen: {
            next();
            const int inner = parseSum();
            if (tok_.type != TokType::kRParen)
                throw ParseError("expected ')'", tok_.offset);
            next();
            return inner;
        }
        case TokType::kIdent: {
            const Token ident = tok_;
            next();
            if (tok_.type == TokType::kLParen) {
                const NodeKind fk = functionKind(ident.text);
                if (fk == NodeKind::kConstant)
                    throw ParseError("unknown function '" + ident.text + "'", ident.offset);
                next();
                ExprNode n;
                n.kind = fk;
                n.offset = ident.offset;
                n.a = parseSum();
                if (tok_.type != TokType::kRParen)
                    throw ParseError("expected ')'", tok_.offset);
                next();
                return addNode(n);
            }
            for (std::size_t i = 0; i < ast_.vars_.size(); ++i) {
                if (ast_.vars_[i] == ident.text) {
                    ExprNode n;
                    n.kind = NodeKind::kVariable;
                    n.offset = ident.offset;
                    n.var = static_cast<int>(i);
                    return addNode(n);
                }
            }
            throw ParseError("unknown identifier '" + ident.text + "'", ident.offset);
        }
        default:
            throw ParseError("expected an operand", tok_.offset);
        }
    }

    static NodeKind functionKind(const std::string& name) {
        if (name == "sin") return NodeKind::kSin;
        if (name == "cos") return NodeKind::kCos;
        if (name == "tan") return NodeKind::kTan;
        if (name == "sinh") return NodeKind::kSinh;
        if (name == "cosh") return NodeKind::kCosh;
        if (name == "exp") return NodeKind::kExp;
        if (name == "log") return NodeKind::kLog;
        if (name == "sqrt") return NodeKind::kSqrt;
        return NodeKind::kConstant; // sentinel: not a function
    }

    void requireConstant(int idx) const {
        const ExprNode& n = ast_.nodes_[static_cast<std::size_t>(idx)];
        if (n.kind == NodeKind::kVariable)
            throw ParseError("exponent must be a constant expression", n.offset);
        if (n.a >= 0) requireConstant(n.a);
        if (n.b >= 0) requireConstant(n.b);
    }

    double foldConstant(int idx, std::uint32_t caretOffset) const {
        try {
            return ast_.evalNode<double>(idx, std::span<const double>{});
        } catch (const EvalError& e) {
            throw ParseError(std::string("invalid constant exponent: ") + e.what(),
                             caretOffset);
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_;
    ExprAst ast_;
};

/// Parses `source` over the given ordered variable list.
inline ExprAst parseExpression(std::string_view source, std::vector<std::string> variables) {
    return ExprParser(source, std::move(variables)).run();
}

} // namespace isocurve
