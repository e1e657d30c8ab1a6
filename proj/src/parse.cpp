#include "gk2dlp/parse.hpp"

#include "gk2dlp/error.hpp"

#include <array>
#include <cctype>
#include <optional>

namespace gk2dlp::frontend {

using prop::Formula;

namespace {

enum class Tok {
    Ident,
    Directive, // #true / #false
    LParen,
    RParen,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Comma,
    Colon,
    Slash,
    If,
    Dot,
    Minus,
    Semi,
    LBracket,
    RBracket,
    Newline,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

constexpr std::array<std::string_view, 7> kReserved{"true", "false", "not", "K", "A", "L", "C"};

bool reserved(std::string_view s) {
    for (auto r : kReserved)
        if (r == s) return true;
    return false;
}

bool modal_keyword(std::string_view s) { return s == "K" || s == "A" || s == "L" || s == "C"; }

/// Line-oriented formats see Newline tokens and `#` comments; the LP format
/// skips newlines, uses `%` comments, and knows `:-`, `-` and `#true`.
std::vector<Token> lex(std::string_view text, bool lp) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto push = [&](Tok k, std::size_t len) {
        out.push_back({k, std::string(text.substr(i, len)), line, col});
        i += len;
        col += len;
    };
    auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < text.size()) {
        const char c = text[i];
        const char next = i + 1 < text.size() ? text[i + 1] : '\0';
        if (c == '\n') {
            if (!lp) out.push_back({Tok::Newline, "\n", line, col});
            ++i;
            ++line;
            col = 1;
        } else if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            ++col;
        } else if ((c == '#' && !lp) || (c == '%' && lp)) {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (c == '#' && lp) {
            std::size_t len = 1;
            while (i + len < text.size() && ident_char(text[i + len])) ++len;
            const auto word = text.substr(i, len);
            if (word != "#true" && word != "#false")
                throw ParseError("unknown directive `" + std::string(word) + "`", line, col);
            push(Tok::Directive, len);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t len = 1;
            while (i + len < text.size() && ident_char(text[i + len])) ++len;
            push(Tok::Ident, len);
        } else if (c == '-' && next == '>') {
            push(Tok::Arrow, 2);
        } else if (c == ':' && next == '-' && lp) {
            push(Tok::If, 2);
        } else {
            Tok k;
            switch (c) {
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '~': k = Tok::Tilde; break;
            case '&': k = Tok::Amp; break;
            case '|': k = Tok::Bar; break;
            case ',': k = Tok::Comma; break;
            case ':': k = Tok::Colon; break;
            case '/': k = Tok::Slash; break;
            case '.': k = Tok::Dot; break;
            case ';': k = Tok::Semi; break;
            case '[': k = Tok::LBracket; break;
            case ']': k = Tok::RBracket; break;
            case '-':
                if (lp) {
                    k = Tok::Minus;
                    break;
                }
                [[fallthrough]];
            default: throw ParseError(std::string("unexpected character `") + c + "`", line, col);
            }
            push(k, 1);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
    default: return "`" + t.text + "`";
    }
}

class Parser {
public:
    Parser(std::string_view text, bool lp) : toks_(lex(text, lp)) {}

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_ident(std::string_view s, std::size_t k = 0) const {
        return peek(k).kind == Tok::Ident && peek(k).text == s;
    }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool accept(Tok k) {
        if (!at(k)) return false;
        next();
        return true;
    }
    const Token& expect(Tok k, const char* what) {
        if (!at(k)) fail(peek(), std::string("expected ") + what + ", got " + describe(peek()));
        return next();
    }
    [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(msg, t.line, t.col); }

    void skip_newlines() {
        while (accept(Tok::Newline)) {
        }
    }
    void end_line() {
        if (!at(Tok::End)) expect(Tok::Newline, "end of line");
    }

    std::string atom_name(const Token& t) {
        if (modal_keyword(t.text) && peek().kind == Tok::LParen)
            fail(t, "modal operator `" + t.text + "` not allowed here (nested modality)");
        if (reserved(t.text)) fail(t, "reserved word `" + t.text + "` cannot be used as an atom");
        return t.text;
    }

    // Boolean structure shared by all formula languages; `Ops` supplies the
    // constructors and the leaf parser for identifiers.
    template <class Ops> typename Ops::T imp(Ops& ops) {
        auto lhs = disj(ops);
        if (!accept(Tok::Arrow)) return lhs;
        return Ops::disj(Ops::neg(std::move(lhs)), imp(ops));
    }
    template <class Ops> typename Ops::T disj(Ops& ops) {
        auto f = conj(ops);
        while (accept(Tok::Bar)) f = Ops::disj(std::move(f), conj(ops));
        return f;
    }
    template <class Ops> typename Ops::T conj(Ops& ops) {
        auto f = unary(ops);
        while (accept(Tok::Amp)) f = Ops::conj(std::move(f), unary(ops));
        return f;
    }
    template <class Ops> typename Ops::T unary(Ops& ops) {
        if (accept(Tok::Tilde)) return Ops::neg(unary(ops));
        if (accept(Tok::LParen)) {
            auto f = imp(ops);
            expect(Tok::RParen, "`)`");
            return f;
        }
        if (accept_ident("true")) return Ops::verum();
        if (accept_ident("false")) return Ops::falsum();
        if (!at(Tok::Ident)) fail(peek(), "expected a formula, got " + describe(peek()));
        return ops.leaf(*this, next());
    }

    bool accept_ident(std::string_view s) {
        if (!at_ident(s)) return false;
        next();
        return true;
    }

    prop::Formula modal_argument() {
        expect(Tok::LParen, "`(`");
        auto f = prop_formula();
        expect(Tok::RParen, "`)`");
        return f;
    }

    prop::Formula prop_formula();

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

struct PropOps {
    using T = Formula;
    static T verum() { return Formula::verum(); }
    static T falsum() { return Formula::falsum(); }
    static T neg(T f) { return prop::neg(std::move(f)); }
    static T conj(T f, T g) { return prop::conj(std::move(f), std::move(g)); }
    static T disj(T f, T g) { return prop::disj(std::move(f), std::move(g)); }
    T leaf(Parser& p, const Token& t) { return Formula::atom(p.atom_name(t)); }
};

prop::Formula Parser::prop_formula() {
    PropOps ops;
    return imp(ops);
}

struct GkOps {
    using T = gk::GkFormula;
    static T verum() { return T::verum(); }
    static T falsum() { return T::falsum(); }
    static T neg(T f) { return gk::neg(std::move(f)); }
    static T conj(T f, T g) { return gk::conj(std::move(f), std::move(g)); }
    static T disj(T f, T g) { return gk::disj(std::move(f), std::move(g)); }
    T leaf(Parser& p, const Token& t) {
        if ((t.text == "K" || t.text == "A") && p.at(Tok::LParen)) {
            auto arg = p.modal_argument();
            return t.text == "K" ? T::K(std::move(arg)) : T::A(std::move(arg));
        }
        if (reserved(t.text)) p.fail(t, "reserved word `" + t.text + "` cannot be used here");
        p.fail(t, "atom `" + t.text + "` must occur inside K(...) or A(...)");
    }
};

struct UclOps {
    using T = embed::UclFormula;
    static T verum() { return {embed::UclOp::True, {}, {}, {}}; }
    static T falsum() { return {embed::UclOp::False, {}, {}, {}}; }
    static T neg(T f) { return T::neg(std::move(f)); }
    static T conj(T f, T g) { return T::conj(std::move(f), std::move(g)); }
    static T disj(T f, T g) { return T::disj(std::move(f), std::move(g)); }
    T leaf(Parser& p, const Token& t) {
        if (t.text == "C" && p.at(Tok::LParen)) return T::c(p.modal_argument());
        return T::atom_of(p.atom_name(t));
    }
};

bool section_header(Parser& p, std::string_view name) {
    if (!p.at(Tok::LBracket) || !p.at_ident(name, 1) || p.peek(2).kind != Tok::RBracket) return false;
    p.next();
    p.next();
    p.next();
    return true;
}

dlp::Literal lp_literal(Parser& p) {
    const bool negative = p.accept(Tok::Minus);
    const Token& t = p.expect(Tok::Ident, "an atom");
    if (reserved(t.text)) p.fail(t, "reserved word `" + t.text + "` cannot be used as an atom");
    return negative ? dlp::negl(t.text) : dlp::pos(t.text);
}

dlp::Expr lp_head_element(Parser& p) {
    if (p.at(Tok::Directive)) {
        const Token& t = p.next();
        if (t.text != "#false") p.fail(t, "only `#false` may appear in a head");
        return dlp::Expr::bot();
    }
    return dlp::Expr::lit(lp_literal(p));
}

dlp::Expr lp_body_element(Parser& p) {
    int nots = 0;
    while (p.at_ident("not")) {
        if (++nots > 2) p.fail(p.peek(), "at most two `not` per body element");
        p.next();
    }
    dlp::Expr e;
    if (p.at(Tok::Directive)) {
        e = p.next().text == "#true" ? dlp::Expr::top() : dlp::Expr::bot();
    } else {
        e = dlp::Expr::lit(lp_literal(p));
    }
    for (int i = 0; i < nots; ++i) e = dlp::Expr::not_(e);
    return e;
}

} // namespace

prop::Formula parse_formula(std::string_view text) {
    Parser p(text, false);
    p.skip_newlines();
    auto f = p.prop_formula();
    p.skip_newlines();
    p.expect(Tok::End, "end of input");
    return f;
}

gk::GkTheory parse_gk(std::string_view text) {
    Parser p(text, false);
    GkOps ops;
    gk::GkTheory T;
    for (p.skip_newlines(); !p.at(Tok::End); p.skip_newlines()) {
        T.push_back(p.imp(ops));
        p.end_line();
    }
    return T;
}

embed::DefaultTheory parse_dl(std::string_view text) {
    Parser p(text, false);
    embed::DefaultTheory dt;
    enum class Section { None, W, D } section = Section::None;
    for (p.skip_newlines(); !p.at(Tok::End); p.skip_newlines()) {
        if (section_header(p, "W")) {
            section = Section::W;
        } else if (section_header(p, "D")) {
            section = Section::D;
        } else if (section == Section::None) {
            p.fail(p.peek(), "expected a `[W]` or `[D]` section header");
        } else if (section == Section::W) {
            dt.W.push_back(p.prop_formula());
        } else {
            embed::Default d;
            if (!p.at(Tok::Colon)) d.prerequisite = p.prop_formula();
            p.expect(Tok::Colon, "`:` after the prerequisite");
            if (!p.at(Tok::Slash)) {
                do {
                    d.justifications.push_back(p.prop_formula());
                } while (p.accept(Tok::Comma));
            }
            p.expect(Tok::Slash, "`/` before the consequent");
            d.consequent = p.prop_formula();
            dt.D.push_back(std::move(d));
        }
        p.end_line();
    }
    return dt;
}

std::vector<embed::AelSentence> parse_ael(std::string_view text) {
    Parser p(text, false);
    PropOps ops;
    std::vector<embed::AelSentence> out;
    p.skip_newlines();
    if (section_header(p, "AEL")) p.end_line();
    for (p.skip_newlines(); !p.at(Tok::End); p.skip_newlines()) {
        embed::AelSentence s;
        do {
            if (p.at(Tok::Tilde) && p.at_ident("L", 1) && p.peek(2).kind == Tok::LParen) {
                const Token& tilde = p.next();
                p.next();
                if (s.neg_l) p.fail(tilde, "more than one `~L(...)` disjunct; sentence is not in normal form");
                s.neg_l = p.modal_argument();
            } else if (p.at_ident("L") && p.peek(1).kind == Tok::LParen) {
                p.next();
                s.pos_l.push_back(p.modal_argument());
            } else {
                auto f = p.conj(ops);
                s.objective = s.objective ? prop::disj(*s.objective, std::move(f)) : std::move(f);
            }
        } while (p.accept(Tok::Bar));
        out.push_back(std::move(s));
        p.end_line();
    }
    return out;
}

embed::UclTheory parse_ucl(std::string_view text) {
    Parser p(text, false);
    UclOps ops;
    embed::UclTheory u;
    p.skip_newlines();
    if (section_header(p, "ATOMS")) {
        while (p.at(Tok::Ident)) {
            const Token& t = p.next();
            if (reserved(t.text)) p.fail(t, "reserved word `" + t.text + "` cannot be used as an atom");
            u.universe.push_back(t.text);
        }
        p.end_line();
    }
    for (p.skip_newlines(); !p.at(Tok::End); p.skip_newlines()) {
        u.formulas.push_back(p.imp(ops));
        p.end_line();
    }
    return u;
}

dlp::Program parse_lp(std::string_view text) {
    Parser p(text, true);
    dlp::Program P;
    while (!p.at(Tok::End)) {
        std::vector<dlp::Expr> head, body;
        if (!p.at(Tok::If)) {
            do {
                head.push_back(lp_head_element(p));
            } while (p.accept(Tok::Bar) || p.accept(Tok::Semi));
        }
        if (p.accept(Tok::If)) {
            do {
                body.push_back(lp_body_element(p));
            } while (p.accept(Tok::Comma));
        }
        p.expect(Tok::Dot, "`.` at the end of the rule");
        P.rules.push_back({dlp::Expr::disj(head), dlp::Expr::conj(body)});
    }
    return P;
}

std::string print_gk(const gk::GkTheory& T) {
    std::string out;
    for (const auto& F : T) out += gk::to_string(F) + "\n";
    return out;
}

std::string print_dl(const embed::DefaultTheory& dt) {
    std::string out = "[W]\n";
    for (const auto& w : dt.W) out += prop::to_string(w) + "\n";
    out += "[D]\n";
    for (const auto& d : dt.D) {
        if (d.prerequisite != Formula::verum()) out += prop::to_string(d.prerequisite) + " ";
        out += ":";
        for (std::size_t i = 0; i < d.justifications.size(); ++i)
            out += (i ? ", " : " ") + prop::to_string(d.justifications[i]);
        out += " / " + prop::to_string(d.consequent) + "\n";
    }
    return out;
}

std::string print_ael(const std::vector<embed::AelSentence>& sentences) {
    std::string out = "[AEL]\n";
    for (const auto& s : sentences) {
        std::vector<std::string> parts;
        if (s.neg_l) parts.push_back("~L(" + prop::to_string(*s.neg_l) + ")");
        for (const auto& psi : s.pos_l) parts.push_back("L(" + prop::to_string(psi) + ")");
        if (s.objective) parts.push_back(prop::to_string(*s.objective));
        if (parts.empty()) parts.push_back("false");
        for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " | " : "") + parts[i];
        out += "\n";
    }
    return out;
}

std::string print_ucl(const embed::UclTheory& u) {
    std::string out;
    if (!u.universe.empty()) {
        out += "[ATOMS]";
        for (const auto& p : u.universe) out += " " + p;
        out += "\n";
    }
    for (const auto& f : u.formulas) out += embed::to_string(f) + "\n";
    return out;
}

std::string print_lp(const std::vector<dlp::FlatRule>& rules) {
    std::string out;
    for (const auto& r : rules) {
        std::string head, body;
        for (const auto& l : r.head) head += (head.empty() ? "" : " | ") + dlp::to_string(l);
        for (const auto& b : r.body) {
            if (!body.empty()) body += ", ";
            for (int i = 0; i < b.nots; ++i) body += "not ";
            body += dlp::to_string(b.lit);
        }
        if (head.empty() && body.empty()) body = "#true";
        out += head;
        if (!body.empty()) out += head.empty() ? ":- " + body : " :- " + body;
        out += ".\n";
    }
    return out;
}

} // namespace gk2dlp::frontend
