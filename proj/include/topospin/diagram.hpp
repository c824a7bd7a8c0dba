// Textual DSL for planar cup/cap diagrams and its evaluator.
//
// Grammar (normative):
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('|' factor)*
//   factor := atom (';' atom)*
//   atom   := 'cup' '(' site ',' site ':' type ')'
//           | 'cap' '(' site ',' site ':' type ')'
//           | scalar '*' atom
//           | '(' expr ')'
//   type   := 'd1' | 'd2' | 'o1' | 'o2'
//   scalar := complex literal: a | bi | i | a+bi | a-bi   (a, b unsigned decimals)
//
// ';' composes top-to-bottom (the right operand is applied first, like
// operator composition), '|' is horizontal juxtaposition, sites are 1..8.
// A complex literal binds its internal '+'/'-' tighter than expression-level
// sums: "1+2i * cup(...)" is the scalar (1+2i) times the cup.
//
// Every cup or cap token carries a sqrt(d) weight, so a closed same-type
// cap-over-cup loop evaluates to the loop value d with no extra bookkeeping.
#pragma once

#include "topospin/cupcap.hpp"
#include "topospin/numerics.hpp"

#include <bit>
#include <cctype>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace topospin {

// ---------------------------------------------------------------------------
// sites
// ---------------------------------------------------------------------------

// Bit k-1 represents site k; sites ascend from the most significant index
// bit, matching the global qubit ordering.
using SiteMask = std::uint16_t;

inline constexpr int kMaxDiagramSites = 8;

inline SiteMask site_bit(int site) { return static_cast<SiteMask>(1u << (site - 1)); }

inline int site_count(SiteMask m) { return std::popcount(m); }

inline std::vector<int> sites_of(SiteMask m) {
    std::vector<int> out;
    for (int s = 1; s <= kMaxDiagramSites; ++s)
        if (m & site_bit(s)) out.push_back(s);
    return out;
}

inline std::string site_list(SiteMask m) {
    std::string out;
    for (int s : sites_of(m)) {
        if (!out.empty()) out += ",";
        out += std::to_string(s);
    }
    return out.empty() ? "-" : out;
}

// Extract the sub-index over `sub` from a composite index over `full`.
// Index bits follow ascending site order, first site most significant.
inline int extract_bits(int idx, SiteMask full, SiteMask sub) {
    const int n = site_count(full);
    int out = 0;
    int pos = n;
    for (int s = 1; s <= kMaxDiagramSites; ++s) {
        if (!(full & site_bit(s))) continue;
        --pos;
        if (sub & site_bit(s)) out = (out << 1) | ((idx >> pos) & 1);
    }
    return out;
}

// ---------------------------------------------------------------------------
// errors
// ---------------------------------------------------------------------------

struct DiagramError : Error {
    using Error::Error;
};

struct SourceLocation {
    int line = 1;
    int column = 1;
};

struct SyntaxError : DiagramError {
    SourceLocation where;
    std::vector<std::string> expected;

    SyntaxError(const std::string& msg, SourceLocation loc, std::vector<std::string> want)
        : DiagramError(msg + " at line " + std::to_string(loc.line) + ", column " +
                       std::to_string(loc.column) + format_expected(want)),
          where(loc),
          expected(std::move(want)) {}

private:
    static std::string format_expected(const std::vector<std::string>& want) {
        if (want.empty()) return "";
        std::string s = " (expected ";
        for (std::size_t i = 0; i < want.size(); ++i) {
            if (i) s += ", ";
            s += want[i];
        }
        return s + ")";
    }
};

struct DisjointnessViolation : DiagramError {
    using DiagramError::DiagramError;
};

struct BoundaryMismatch : DiagramError {
    using DiagramError::DiagramError;
};

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

class Diagram;
using DiagramPtr = std::shared_ptr<const Diagram>;

struct CupNode {
    int first, second;
    CupType type;
};
struct CapNode {
    int first, second;
    CupType type;
};
struct TensorNode {
    std::vector<DiagramPtr> factors;
};
struct ComposeNode {
    DiagramPtr top, bottom;  // top applied after bottom
};
struct ScalarNode {
    Complex factor;
    DiagramPtr body;
};
struct SumNode {
    std::vector<DiagramPtr> terms;
};

// Immutable diagram node with its boundary signature: `in` sites consumed
// from below, `out` sites produced above. Closed diagrams have both empty.
class Diagram {
public:
    std::variant<CupNode, CapNode, TensorNode, ComposeNode, ScalarNode, SumNode> node;
    SiteMask in = 0;
    SiteMask out = 0;

    static DiagramPtr cup(int a, int b, CupType t) {
        check_pair(a, b, "cup");
        return make(CupNode{a, b, t}, 0, site_bit(a) | site_bit(b));
    }

    static DiagramPtr cap(int a, int b, CupType t) {
        check_pair(a, b, "cap");
        return make(CapNode{a, b, t}, site_bit(a) | site_bit(b), 0);
    }

    static DiagramPtr tensor(std::vector<DiagramPtr> factors) {
        SiteMask used = 0, in = 0, out = 0;
        for (const auto& f : factors) {
            const SiteMask total = f->in | f->out;
            if (used & total)
                throw DisjointnessViolation(
                    "tensor factors overlap on sites {" +
                    site_list(used & total) + "}");
            used |= total;
            in |= f->in;
            out |= f->out;
        }
        if (factors.size() == 1) return factors.front();
        return make(TensorNode{std::move(factors)}, in, out);
    }

    static DiagramPtr compose(DiagramPtr top, DiagramPtr bottom) {
        if (top->in != bottom->out)
            throw BoundaryMismatch("cannot glue boundary {" + site_list(bottom->out) +
                                   "} below to {" + site_list(top->in) + "} above");
        return make(ComposeNode{top, bottom}, bottom->in, top->out);
    }

    static DiagramPtr scaled(Complex factor, DiagramPtr body) {
        const SiteMask in = body->in, out = body->out;
        return make(ScalarNode{factor, std::move(body)}, in, out);
    }

    static DiagramPtr sum(std::vector<DiagramPtr> terms) {
        for (const auto& t : terms) {
            if (t->in != terms.front()->in || t->out != terms.front()->out)
                throw BoundaryMismatch(
                    "sum terms must share boundaries; got ({" +
                    site_list(terms.front()->in) + "} -> {" +
                    site_list(terms.front()->out) + "}) and ({" + site_list(t->in) +
                    "} -> {" + site_list(t->out) + "})");
        }
        if (terms.size() == 1) return terms.front();
        const SiteMask in = terms.front()->in, out = terms.front()->out;
        return make(SumNode{std::move(terms)}, in, out);
    }

private:
    template <typename Node>
    static DiagramPtr make(Node n, SiteMask in, SiteMask out) {
        auto d = std::make_shared<Diagram>();
        d->node = std::move(n);
        d->in = in;
        d->out = out;
        return d;
    }

    static void check_pair(int a, int b, const char* what) {
        if (a < 1 || a > kMaxDiagramSites || b < 1 || b > kMaxDiagramSites)
            throw DiagramError(std::string(what) + ": sites must be in 1.." +
                               std::to_string(kMaxDiagramSites));
        if (a == b)
            throw DisjointnessViolation(std::string(what) + "(" + std::to_string(a) +
                                        "," + std::to_string(b) +
                                        "): strand endpoints must be distinct");
    }
    friend DiagramPtr mirror(const DiagramPtr&);
};

// Vertical mirror: cups become caps (and vice versa), compositions reverse,
// scalar weights conjugate. Evaluating the mirror equals the dagger of
// evaluating the original.
inline DiagramPtr mirror(const DiagramPtr& d) {
    return std::visit(
        [&](const auto& n) -> DiagramPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, CupNode>) {
                return Diagram::cap(n.first, n.second, n.type);
            } else if constexpr (std::is_same_v<T, CapNode>) {
                return Diagram::cup(n.first, n.second, n.type);
            } else if constexpr (std::is_same_v<T, TensorNode>) {
                std::vector<DiagramPtr> fs;
                for (const auto& f : n.factors) fs.push_back(mirror(f));
                return Diagram::tensor(std::move(fs));
            } else if constexpr (std::is_same_v<T, ComposeNode>) {
                return Diagram::compose(mirror(n.bottom), mirror(n.top));
            } else if constexpr (std::is_same_v<T, ScalarNode>) {
                return Diagram::scaled(std::conj(n.factor), mirror(n.body));
            } else {
                static_assert(std::is_same_v<T, SumNode>);
                std::vector<DiagramPtr> ts;
                for (const auto& t : n.terms) ts.push_back(mirror(t));
                return Diagram::sum(std::move(ts));
            }
        },
        d->node);
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

namespace detail {

enum class TokKind {
    kw_cup, kw_cap, cup_type, number, imag_number, imag_unit,
    lparen, rparen, comma, colon, semi, pipe, plus, minus, star, end
};

struct Token {
    TokKind kind = TokKind::end;
    SourceLocation loc;
    double value = 0.0;  // number / imag_number
    CupType type = CupType::d1;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            bump();
        tok_ = Token{};
        tok_.loc = {line_, col_};
        if (pos_ >= src_.size()) {
            tok_.kind = TokKind::end;
            return;
        }
        const char c = src_[pos_];
        switch (c) {
            case '(': tok_.kind = TokKind::lparen; bump(); return;
            case ')': tok_.kind = TokKind::rparen; bump(); return;
            case ',': tok_.kind = TokKind::comma; bump(); return;
            case ':': tok_.kind = TokKind::colon; bump(); return;
            case ';': tok_.kind = TokKind::semi; bump(); return;
            case '|': tok_.kind = TokKind::pipe; bump(); return;
            case '+': tok_.kind = TokKind::plus; bump(); return;
            case '-': tok_.kind = TokKind::minus; bump(); return;
            case '*': tok_.kind = TokKind::star; bump(); return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            lex_word();
            return;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", tok_.loc, {});
    }

    void lex_number() {
        std::string digits;
        bool seen_dot = false, seen_exp = false;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                digits += c;
            } else if (c == '.' && !seen_dot && !seen_exp) {
                seen_dot = true;
                digits += c;
            } else if ((c == 'e' || c == 'E') && !seen_exp && !digits.empty() &&
                       pos_ + 1 < src_.size() &&
                       (std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) ||
                        ((src_[pos_ + 1] == '+' || src_[pos_ + 1] == '-') &&
                         pos_ + 2 < src_.size() &&
                         std::isdigit(static_cast<unsigned char>(src_[pos_ + 2]))))) {
                seen_exp = true;
                digits += c;
                bump();
                digits += src_[pos_];
            } else {
                break;
            }
            bump();
        }
        try {
            tok_.value = std::stod(digits);
        } catch (const std::exception&) {
            throw SyntaxError("malformed number '" + digits + "'", tok_.loc, {});
        }
        // an immediately attached 'i' makes the literal imaginary: 2i, 0.5i
        if (pos_ < src_.size() && src_[pos_] == 'i' &&
            (pos_ + 1 >= src_.size() ||
             !std::isalnum(static_cast<unsigned char>(src_[pos_ + 1])))) {
            bump();
            tok_.kind = TokKind::imag_number;
        } else {
            tok_.kind = TokKind::number;
        }
        tok_.text = digits;
    }

    void lex_word() {
        std::string word;
        while (pos_ < src_.size() &&
               std::isalnum(static_cast<unsigned char>(src_[pos_]))) {
            word += src_[pos_];
            bump();
        }
        tok_.text = word;
        if (word == "cup") {
            tok_.kind = TokKind::kw_cup;
        } else if (word == "cap") {
            tok_.kind = TokKind::kw_cap;
        } else if (word == "i") {
            tok_.kind = TokKind::imag_unit;
        } else if (auto t = cup_type_from(word)) {
            tok_.kind = TokKind::cup_type;
            tok_.type = *t;
        } else {
            throw SyntaxError("unknown word '" + word + "'", tok_.loc,
                              {"cup", "cap", "d1", "d2", "o1", "o2", "i"});
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    DiagramPtr parse() {
        DiagramPtr d = parse_expr();
        expect(TokKind::end, {"end of input"});
        return d;
    }

private:
    DiagramPtr parse_expr() {
        std::vector<DiagramPtr> terms{parse_term()};
        while (lex_.peek().kind == TokKind::plus || lex_.peek().kind == TokKind::minus) {
            const bool negate = lex_.take().kind == TokKind::minus;
            DiagramPtr t = parse_term();
            terms.push_back(negate ? Diagram::scaled(Complex(-1.0, 0.0), t) : t);
        }
        return Diagram::sum(std::move(terms));
    }

    DiagramPtr parse_term() {
        std::vector<DiagramPtr> factors{parse_factor()};
        while (lex_.peek().kind == TokKind::pipe) {
            lex_.take();
            factors.push_back(parse_factor());
        }
        return Diagram::tensor(std::move(factors));
    }

    DiagramPtr parse_factor() {
        DiagramPtr d = parse_atom();
        while (lex_.peek().kind == TokKind::semi) {
            lex_.take();
            d = Diagram::compose(d, parse_atom());
        }
        return d;
    }

    DiagramPtr parse_atom() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case TokKind::kw_cup:
            case TokKind::kw_cap: {
                const bool is_cup = t.kind == TokKind::kw_cup;
                lex_.take();
                expect(TokKind::lparen, {"'('"});
                const int a = parse_site();
                expect(TokKind::comma, {"','"});
                const int b = parse_site();
                expect(TokKind::colon, {"':'"});
                const Token ty = expect(TokKind::cup_type, {"d1", "d2", "o1", "o2"});
                expect(TokKind::rparen, {"')'"});
                return is_cup ? Diagram::cup(a, b, ty.type) : Diagram::cap(a, b, ty.type);
            }
            case TokKind::lparen: {
                lex_.take();
                DiagramPtr d = parse_expr();
                expect(TokKind::rparen, {"')'"});
                return d;
            }
            case TokKind::number:
            case TokKind::imag_number:
            case TokKind::imag_unit: {
                const Complex scalar = parse_complex_literal();
                expect(TokKind::star, {"'*'"});
                return Diagram::scaled(scalar, parse_atom());
            }
            default:
                throw SyntaxError("expected a diagram atom", t.loc,
                                  {"cup", "cap", "scalar", "'('"});
        }
    }

    // a | bi | i | a+bi | a-bi | a+i | a-i  (maximal munch at atom position)
    Complex parse_complex_literal() {
        Token first = lex_.take();
        if (first.kind == TokKind::imag_unit) return Complex(0.0, 1.0);
        if (first.kind == TokKind::imag_number) return Complex(0.0, first.value);
        double re = first.value;
        if (lex_.peek().kind == TokKind::plus || lex_.peek().kind == TokKind::minus) {
            const double sign = lex_.take().kind == TokKind::minus ? -1.0 : 1.0;
            Token imag = lex_.take();
            if (imag.kind == TokKind::imag_unit) return Complex(re, sign);
            if (imag.kind == TokKind::imag_number) return Complex(re, sign * imag.value);
            throw SyntaxError("expected imaginary part after sign in complex literal",
                              imag.loc, {"bi", "i"});
        }
        return Complex(re, 0.0);
    }

    int parse_site() {
        const Token t = expect(TokKind::number, {"site number"});
        const double v = t.value;
        const int site = static_cast<int>(v);
        if (static_cast<double>(site) != v || site < 1 || site > kMaxDiagramSites)
            throw SyntaxError("site must be an integer in 1.." +
                                  std::to_string(kMaxDiagramSites),
                              t.loc, {});
        return site;
    }

    Token expect(TokKind k, std::vector<std::string> want) {
        if (lex_.peek().kind != k)
            throw SyntaxError("unexpected token" + describe(lex_.peek()),
                              lex_.peek().loc, std::move(want));
        return lex_.take();
    }

    static std::string describe(const Token& t) {
        if (t.kind == TokKind::end) return " (end of input)";
        if (!t.text.empty()) return " '" + t.text + "'";
        return "";
    }

    Lexer lex_;
};

}  // namespace detail

inline DiagramPtr parse(std::string_view src) { return detail::Parser(src).parse(); }

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

// A partially evaluated diagram: a linear map from the space of `in` sites
// to the space of `out` sites (2^n dimensions each, site-sorted ordering).
struct DiagramBlock {
    SiteMask in = 0, out = 0;
    Operator mat;  // (1 << site_count(out)) x (1 << site_count(in))
};

struct EvalResult {
    enum class Kind { scalar, state, costate, op };
    Kind kind = Kind::scalar;
    SiteMask in = 0, out = 0;
    Operator data;  // scalar: 1x1, state: n x 1, costate: 1 x n, op: full matrix

    Complex scalar() const {
        if (kind != Kind::scalar) throw DiagramError("EvalResult: not a scalar");
        return data(0, 0);
    }
};

inline std::string_view to_string(EvalResult::Kind k) {
    switch (k) {
        case EvalResult::Kind::scalar: return "scalar";
        case EvalResult::Kind::state: return "state";
        case EvalResult::Kind::costate: return "costate";
        case EvalResult::Kind::op: return "op";
    }
    return "?";
}

namespace detail {

inline DiagramBlock tensor_blocks(const DiagramBlock& a, const DiagramBlock& b) {
    DiagramBlock r;
    r.in = a.in | b.in;
    r.out = a.out | b.out;
    const int rows = 1 << site_count(r.out);
    const int cols = 1 << site_count(r.in);
    r.mat.resize(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const int ia = extract_bits(i, r.out, a.out);
        const int ib = extract_bits(i, r.out, b.out);
        for (int j = 0; j < cols; ++j) {
            const int ja = extract_bits(j, r.in, a.in);
            const int jb = extract_bits(j, r.in, b.in);
            r.mat(i, j) = a.mat(ia, ja) * b.mat(ib, jb);
        }
    }
    return r;
}

// Two-site state ordered by ascending site; a descending written pair swaps
// the middle components.
inline StateVector pair_state(int first, int second, CupType t, const TLParams& p) {
    StateVector v = cup_state(t, p);
    if (first > second) std::swap(v[1], v[2]);
    return v;
}

inline DiagramBlock eval_node(const Diagram& d, const TLParams& p) {
    return std::visit(
        [&](const auto& n) -> DiagramBlock {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, CupNode>) {
                DiagramBlock b{0, d.out, {}};
                b.mat = std::sqrt(kLoopValue) * pair_state(n.first, n.second, n.type, p);
                return b;
            } else if constexpr (std::is_same_v<T, CapNode>) {
                DiagramBlock b{d.in, 0, {}};
                b.mat = std::sqrt(kLoopValue) *
                        pair_state(n.first, n.second, n.type, p).adjoint();
                return b;
            } else if constexpr (std::is_same_v<T, TensorNode>) {
                DiagramBlock acc{0, 0, Operator::Ones(1, 1)};
                for (const auto& f : n.factors) acc = tensor_blocks(acc, eval_node(*f, p));
                return acc;
            } else if constexpr (std::is_same_v<T, ComposeNode>) {
                DiagramBlock top = eval_node(*n.top, p);
                DiagramBlock bottom = eval_node(*n.bottom, p);
                return {bottom.in, top.out, top.mat * bottom.mat};
            } else if constexpr (std::is_same_v<T, ScalarNode>) {
                DiagramBlock b = eval_node(*n.body, p);
                b.mat *= n.factor;
                return b;
            } else {
                static_assert(std::is_same_v<T, SumNode>);
                DiagramBlock acc = eval_node(*n.terms.front(), p);
                for (std::size_t k = 1; k < n.terms.size(); ++k)
                    acc.mat += eval_node(*n.terms[k], p).mat;
                return acc;
            }
        },
        d.node);
}

}  // namespace detail

inline EvalResult evaluate(const DiagramPtr& d, const TLParams& p) {
    p.validate();
    const DiagramBlock b = detail::eval_node(*d, p);
    EvalResult r;
    r.in = b.in;
    r.out = b.out;
    r.data = b.mat;
    if (b.in == 0 && b.out == 0)
        r.kind = EvalResult::Kind::scalar;
    else if (b.in == 0)
        r.kind = EvalResult::Kind::state;
    else if (b.out == 0)
        r.kind = EvalResult::Kind::costate;
    else
        r.kind = EvalResult::Kind::op;
    return r;
}

inline EvalResult evaluate(std::string_view src, const TLParams& p) {
    return evaluate(parse(src), p);
}

}  // namespace topospin
