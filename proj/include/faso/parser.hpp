#pragma once

#include <cctype>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "faso/ast.hpp"
#include "faso/diagnostics.hpp"

namespace faso {

struct ParseResult {
    Program program;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

namespace parse_detail {

enum class Tok {
    End, Ident, Variable, Number,
    Dot, Comma, Colon, Arrow, LParen, RParen, LBrace, RBrace, Pipe,
    Lt, Gt, Le, Ge, Eq, Ne, Plus, Minus, Star, Slash,
    Not, Pref, AggName, OptName, Succ, AndAnd, OrOr, Error
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double number = 0.0;
    SourceSpan span;
};

class Lexer {
  public:
    Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

    std::vector<Token> run(std::vector<Diagnostic>& diags) {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            Token t = next(diags);
            bool end = t.kind == Tok::End;
            if (t.kind != Tok::Error) out.push_back(std::move(t));
            if (end) break;
        }
        return out;
    }

  private:
    std::string_view src_;
    std::string file_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    char peek(size_t off = 0) const {
        return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
    }
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    SourceSpan span_here(int length) const { return SourceSpan{file_, line_, col_, length}; }

    void skip_trivia() {
        for (;;) {
            char c = peek();
            if (c == '%') {
                while (peek() && peek() != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                return;
            }
        }
    }

    Token make(Tok kind, std::string text) {
        Token t;
        t.kind = kind;
        t.span = span_here(static_cast<int>(text.size()));
        t.text = std::move(text);
        for (size_t i = 0; i < t.text.size(); ++i) advance();
        return t;
    }

    Token next(std::vector<Diagnostic>& diags) {
        char c = peek();
        if (c == '\0') return make(Tok::End, "");
        if (std::isdigit(static_cast<unsigned char>(c))) return lex_number();
        if (c == '_' || std::isalpha(static_cast<unsigned char>(c))) return lex_word();
        if (c == '#') return lex_hash(diags);
        switch (c) {
        case '.': return make(Tok::Dot, ".");
        case ',': return make(Tok::Comma, ",");
        case '(': return make(Tok::LParen, "(");
        case ')': return make(Tok::RParen, ")");
        case '{': return make(Tok::LBrace, "{");
        case '}': return make(Tok::RBrace, "}");
        case '+': return make(Tok::Plus, "+");
        case '*': return make(Tok::Star, "*");
        case '/': return make(Tok::Slash, "/");
        case '-': return make(Tok::Minus, "-");
        case ':': return peek(1) == '-' ? make(Tok::Arrow, ":-") : make(Tok::Colon, ":");
        case '<': return peek(1) == '=' ? make(Tok::Le, "<=") : make(Tok::Lt, "<");
        case '>':
            if (peek(1) == '=') return make(Tok::Ge, ">=");
            if (peek(1) == '>') return make(Tok::Succ, ">>");
            return make(Tok::Gt, ">");
        case '=': return make(Tok::Eq, "=");
        case '!':
            if (peek(1) == '=') return make(Tok::Ne, "!=");
            break;
        case '&':
            if (peek(1) == '&') return make(Tok::AndAnd, "&&");
            break;
        case '|':
            if (peek(1) == '|') return make(Tok::OrOr, "||");
            return make(Tok::Pipe, "|");
        }
        diags.push_back(make_error(std::string("unexpected character '") + c + "'", span_here(1)));
        advance();
        return Token{Tok::Error, "", 0.0, span_here(1)};
    }

    Token lex_number() {
        size_t start = pos_;
        size_t i = pos_;
        while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
        // '.' starts a fraction only when followed by a digit; otherwise it
        // is the statement terminator.
        if (i < src_.size() && src_[i] == '.' && i + 1 < src_.size() &&
            std::isdigit(static_cast<unsigned char>(src_[i + 1]))) {
            ++i;
            while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
        }
        if (i < src_.size() && (src_[i] == 'e' || src_[i] == 'E')) {
            size_t j = i + 1;
            if (j < src_.size() && (src_[j] == '+' || src_[j] == '-')) ++j;
            if (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) {
                ++j;
                while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
                i = j;
            }
        }
        std::string text(src_.substr(start, i - start));
        Token t = make(Tok::Number, text);
        t.number = std::strtod(t.text.c_str(), nullptr);
        return t;
    }

    Token lex_word() {
        size_t i = pos_;
        while (i < src_.size() &&
               (src_[i] == '_' || std::isalnum(static_cast<unsigned char>(src_[i]))))
            ++i;
        std::string text(src_.substr(pos_, i - pos_));
        Tok kind;
        if (text == "not")
            kind = Tok::Not;
        else if (std::isupper(static_cast<unsigned char>(text[0])))
            kind = Tok::Variable;
        else
            kind = Tok::Ident;
        return make(kind, std::move(text));
    }

    Token lex_hash(std::vector<Diagnostic>& diags) {
        size_t i = pos_ + 1;
        while (i < src_.size() &&
               (src_[i] == '_' || std::isalnum(static_cast<unsigned char>(src_[i]))))
            ++i;
        std::string text(src_.substr(pos_, i - pos_));
        if (text == "#pref") return make(Tok::Pref, std::move(text));
        if (text == "#sum_f" || text == "#times_f" || text == "#min_f" || text == "#max_f" ||
            text == "#count_f")
            return make(Tok::AggName, std::move(text));
        if (text == "#max_u" || text == "#min_u" || text == "#max_x" || text == "#min_x" ||
            text == "#max_xu" || text == "#min_xu")
            return make(Tok::OptName, std::move(text));
        diags.push_back(make_error("unknown directive '" + text + "'",
                                   span_here(static_cast<int>(text.size()))));
        Token t = make(Tok::Error, std::move(text));
        return t;
    }
};

struct ParseBail {};

class Parser {
  public:
    Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
        : tokens_(std::move(tokens)), diags_(diags) {}

    Program run() {
        Program program;
        while (!at(Tok::End)) {
            try {
                parse_statement(program);
            } catch (const ParseBail&) {
                sync_to_statement_end();
            }
        }
        return program;
    }

  private:
    std::vector<Token> tokens_;
    std::vector<Diagnostic>& diags_;
    size_t pos_ = 0;

    const Token& cur() const { return tokens_[pos_]; }
    const Token& peek(size_t off = 0) const {
        size_t i = pos_ + off;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    bool at(Tok k) const { return cur().kind == k; }
    Token advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const std::string& message) {
        diags_.push_back(make_error(message, cur().span));
        throw ParseBail{};
    }

    Token expect(Tok k, const char* what) {
        if (!at(k)) fail(std::string("expected ") + what);
        return advance();
    }

    void sync_to_statement_end() {
        while (!at(Tok::End) && !at(Tok::Dot)) advance();
        if (at(Tok::Dot)) advance();
    }

    static bool is_rel(Tok k) {
        return k == Tok::Eq || k == Tok::Ne || k == Tok::Lt || k == Tok::Gt || k == Tok::Le ||
               k == Tok::Ge;
    }

    Rel to_rel(Tok k) {
        switch (k) {
        case Tok::Eq: return Rel::Eq;
        case Tok::Ne: return Rel::Ne;
        case Tok::Lt: return Rel::Lt;
        case Tok::Gt: return Rel::Gt;
        case Tok::Le: return Rel::Le;
        case Tok::Ge: return Rel::Ge;
        default: fail("expected comparison operator");
        }
    }

    // ---- statements ----

    void parse_statement(Program& program) {
        if (at(Tok::Pref)) {
            program.pref.push_back(parse_pref_rule());
            return;
        }
        program.gen.push_back(parse_gen_rule());
    }

    GeneratorRule parse_gen_rule() {
        GeneratorRule rule;
        rule.span = cur().span;
        if (at(Tok::Arrow)) {
            advance(); // constraint
        } else {
            rule.head.push_back(parse_annotated_literal(false));
            while (at(Tok::Ident) && cur().text == "v") {
                advance();
                rule.head.push_back(parse_annotated_literal(false));
            }
            if (at(Tok::Dot)) {
                advance();
                return rule;
            }
            expect(Tok::Arrow, "':-' or '.'");
        }
        parse_gen_body(rule);
        expect(Tok::Dot, "'.'");
        return rule;
    }

    void parse_gen_body(GeneratorRule& rule) {
        for (;;) {
            parse_gen_body_item(rule);
            if (at(Tok::Comma)) {
                advance();
                continue;
            }
            break;
        }
    }

    void parse_gen_body_item(GeneratorRule& rule) {
        if (at(Tok::AggName) || at(Tok::OptName))
            fail("aggregates may appear in preference rules only");
        if (at(Tok::Not)) {
            advance();
            if (at(Tok::OptName))
                fail("negation as failure cannot be applied to an optimization aggregate");
            if (at(Tok::AggName)) fail("aggregates may appear in preference rules only");
            AnnotatedLiteral l = parse_annotated_literal(false);
            l.naf = true;
            rule.body.push_back(std::move(l));
            return;
        }
        if (at(Tok::Minus) && peek(1).kind == Tok::Ident) {
            rule.body.push_back(parse_annotated_literal(false));
            if (is_rel(cur().kind)) fail("comparison guard cannot contain a negated literal");
            return;
        }
        Term expr = parse_term_expr();
        if (is_rel(cur().kind)) {
            Rel r1 = to_rel(advance().kind);
            Term mid = parse_term_expr();
            if (is_rel(cur().kind)) {
                // chained comparison a <= X <= b desugars to two guards
                Rel r2 = to_rel(advance().kind);
                Term rhs = parse_term_expr();
                rule.guards.push_back(Guard{std::move(expr), r1, mid});
                rule.guards.push_back(Guard{std::move(mid), r2, std::move(rhs)});
            } else {
                rule.guards.push_back(Guard{std::move(expr), r1, std::move(mid)});
            }
            return;
        }
        rule.body.push_back(finish_literal_from_term(std::move(expr)));
    }

    AnnotatedLiteral finish_literal_from_term(Term expr) {
        Literal lit;
        if (expr.kind == TermKind::Symbol) {
            lit.predicate = expr.name;
        } else if (expr.kind == TermKind::Function) {
            lit.predicate = expr.name;
            lit.args = std::move(expr.args);
        } else {
            fail("expected a literal or comparison guard");
        }
        AnnotatedLiteral out;
        out.lit = std::move(lit);
        if (at(Tok::Colon)) {
            advance();
            out.annotation = parse_annotation();
        }
        return out;
    }

    FuzzyPreferenceRule parse_pref_rule() {
        FuzzyPreferenceRule rule;
        rule.span = cur().span;
        expect(Tok::Pref, "'#pref'");
        rule.head.push_back(parse_combination());
        while (at(Tok::Succ)) {
            advance();
            rule.head.push_back(parse_combination());
        }
        if (at(Tok::Arrow)) {
            advance();
            if (!at(Tok::Dot)) {
                for (;;) {
                    rule.body.push_back(parse_pref_body_item());
                    if (at(Tok::Comma)) {
                        advance();
                        continue;
                    }
                    break;
                }
            }
        }
        expect(Tok::Dot, "'.'");
        return rule;
    }

    PrefBodyItem parse_pref_body_item() {
        bool naf = false;
        if (at(Tok::Not)) {
            advance();
            naf = true;
        }
        if (at(Tok::OptName))
            fail("optimization aggregates cannot appear in rule bodies");
        if (at(Tok::AggName)) {
            AggregateAtom atom = parse_aggregate_atom();
            atom.naf = naf;
            return atom;
        }
        AnnotatedLiteral l = parse_annotated_literal(false);
        l.naf = naf;
        return l;
    }

    // ---- boolean combinations ----

    Combination parse_combination() { return parse_or_combination(); }

    Combination parse_or_combination() {
        Combination lhs = parse_and_combination();
        while (at(Tok::OrOr)) {
            advance();
            Combination rhs = parse_and_combination();
            lhs = Combination::make_connective(Combination::Kind::Or, std::move(lhs),
                                               std::move(rhs));
        }
        return lhs;
    }

    Combination parse_and_combination() {
        Combination lhs = parse_combination_leaf();
        while (at(Tok::AndAnd)) {
            advance();
            Combination rhs = parse_combination_leaf();
            lhs = Combination::make_connective(Combination::Kind::And, std::move(lhs),
                                               std::move(rhs));
        }
        return lhs;
    }

    Combination parse_combination_leaf() {
        if (at(Tok::LParen)) {
            advance();
            Combination inner = parse_or_combination();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (at(Tok::Not)) {
            advance();
            if (at(Tok::OptName))
                fail("negation as failure cannot be applied to an optimization aggregate");
            if (at(Tok::LParen))
                fail("negation as failure applies to literals and aggregate atoms only");
            if (at(Tok::AggName)) {
                AggregateAtom atom = parse_aggregate_atom();
                atom.naf = true;
                return Combination::make_aggregate(std::move(atom));
            }
            AnnotatedLiteral l = parse_annotated_literal(false);
            l.naf = true;
            return Combination::make_literal(std::move(l));
        }
        if (at(Tok::OptName)) return Combination::make_opt(parse_opt_aggregate());
        if (at(Tok::AggName)) return Combination::make_aggregate(parse_aggregate_atom());
        return Combination::make_literal(parse_annotated_literal(false));
    }

    // ---- aggregates ----

    AggFunc to_agg_func(const std::string& text) {
        if (text == "#sum_f") return AggFunc::Sum;
        if (text == "#times_f") return AggFunc::Times;
        if (text == "#min_f") return AggFunc::Min;
        if (text == "#max_f") return AggFunc::Max;
        return AggFunc::Count;
    }

    OptKind to_opt_kind(const std::string& text) {
        if (text == "#max_u") return OptKind::MaxGrade;
        if (text == "#min_u") return OptKind::MinGrade;
        if (text == "#max_x") return OptKind::MaxValue;
        if (text == "#min_x") return OptKind::MinValue;
        if (text == "#max_xu") return OptKind::MaxValueGrade;
        return OptKind::MinValueGrade;
    }

    AggregateAtom parse_aggregate_atom() {
        AggregateAtom atom;
        atom.aggregate.func = to_agg_func(expect(Tok::AggName, "aggregate name").text);
        expect(Tok::LBrace, "'{'");
        atom.aggregate.set = parse_set_term();
        expect(Tok::RBrace, "'}'");
        if (!is_rel(cur().kind)) fail("expected comparison operator after aggregate");
        atom.relation = to_rel(advance().kind);
        atom.guard = parse_guard_term();
        if (at(Tok::Colon)) {
            advance();
            atom.annotation = parse_annotation();
        }
        return atom;
    }

    OptAggregate parse_opt_aggregate() {
        OptAggregate opt;
        opt.kind = to_opt_kind(expect(Tok::OptName, "optimization aggregate name").text);
        expect(Tok::LBrace, "'{'");
        if (at(Tok::AggName)) {
            opt.aggregate.func = to_agg_func(advance().text);
            expect(Tok::LBrace, "'{'");
            opt.aggregate.set = parse_set_term();
            expect(Tok::RBrace, "'}'");
        } else {
            // abbreviation: a bare set term stands for any non-count
            // aggregate applied to a singleton
            opt.aggregate.func = AggFunc::ImplicitSingleton;
            opt.aggregate.set = parse_set_term();
        }
        expect(Tok::RBrace, "'}'");
        return opt;
    }

    FuzzySetTerm parse_set_term() {
        if (at(Tok::RBrace)) return GroundSet{};
        if (at(Tok::Lt)) {
            GroundSet entries;
            for (;;) {
                entries.push_back(parse_ground_entry());
                if (at(Tok::Comma)) {
                    advance();
                    continue;
                }
                break;
            }
            return entries;
        }
        SymbolicSet set;
        set.value = parse_term_expr();
        expect(Tok::Colon, "':'");
        set.annotation = parse_annotation();
        expect(Tok::Pipe, "'|'");
        if (!at(Tok::RBrace)) set.condition = parse_condition();
        return set;
    }

    SetEntry parse_ground_entry() {
        expect(Tok::Lt, "'<'");
        SetEntry entry;
        entry.value = parse_term_expr();
        expect(Tok::Colon, "':'");
        entry.grade = parse_annotation();
        if (at(Tok::Pipe)) {
            advance();
            if (!at(Tok::Gt)) entry.condition = parse_condition();
        }
        expect(Tok::Gt, "'>'");
        return entry;
    }

    std::vector<AnnotatedLiteral> parse_condition() {
        std::vector<AnnotatedLiteral> out;
        for (;;) {
            if (at(Tok::Not)) fail("set conditions are conjunctions of positive literals");
            out.push_back(parse_annotated_literal(false));
            if (at(Tok::Comma)) {
                advance();
                continue;
            }
            break;
        }
        return out;
    }

    // ---- literals, terms, annotations ----

    AnnotatedLiteral parse_annotated_literal(bool naf) {
        AnnotatedLiteral out;
        out.naf = naf;
        out.lit = parse_literal();
        if (at(Tok::Colon)) {
            advance();
            out.annotation = parse_annotation();
        }
        return out;
    }

    Literal parse_literal() {
        Literal lit;
        if (at(Tok::Minus)) {
            advance();
            lit.negated = true;
        }
        lit.predicate = expect(Tok::Ident, "predicate name").text;
        if (at(Tok::LParen)) {
            advance();
            for (;;) {
                lit.args.push_back(parse_term_expr());
                if (at(Tok::Comma)) {
                    advance();
                    continue;
                }
                break;
            }
            expect(Tok::RParen, "')'");
        }
        return lit;
    }

    // Aggregate guards are constants, variables, or function terms.
    Term parse_guard_term() {
        if (at(Tok::Number)) return Term::make_number(advance().number);
        if (at(Tok::Minus) && peek(1).kind == Tok::Number) {
            advance();
            return Term::make_number(-advance().number);
        }
        if (at(Tok::Variable)) return Term::make_variable(advance().text);
        if (at(Tok::Ident)) {
            std::string name = advance().text;
            if (!at(Tok::LParen)) return Term::make_symbol(std::move(name));
            advance();
            std::vector<Term> args;
            for (;;) {
                args.push_back(parse_term_expr());
                if (at(Tok::Comma)) {
                    advance();
                    continue;
                }
                break;
            }
            expect(Tok::RParen, "')'");
            return Term::make_function(std::move(name), std::move(args));
        }
        fail("expected aggregate guard term");
    }

    Term parse_term_expr() {
        Term lhs = parse_term_mul();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            ArithOp op = at(Tok::Plus) ? ArithOp::Add : ArithOp::Sub;
            advance();
            Term rhs = parse_term_mul();
            lhs = Term::make_arith(op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Term parse_term_mul() {
        Term lhs = parse_term_primary();
        while (at(Tok::Star) || at(Tok::Slash)) {
            ArithOp op = at(Tok::Star) ? ArithOp::Mul : ArithOp::Div;
            advance();
            Term rhs = parse_term_primary();
            lhs = Term::make_arith(op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Term parse_term_primary() {
        if (at(Tok::Number)) return Term::make_number(advance().number);
        if (at(Tok::Minus) && peek(1).kind == Tok::Number) {
            advance();
            return Term::make_number(-advance().number);
        }
        if (at(Tok::Variable)) return Term::make_variable(advance().text);
        if (at(Tok::Ident)) {
            std::string name = advance().text;
            if (!at(Tok::LParen)) return Term::make_symbol(std::move(name));
            advance();
            std::vector<Term> args;
            for (;;) {
                args.push_back(parse_term_expr());
                if (at(Tok::Comma)) {
                    advance();
                    continue;
                }
                break;
            }
            expect(Tok::RParen, "')'");
            return Term::make_function(std::move(name), std::move(args));
        }
        if (at(Tok::LParen)) {
            advance();
            Term inner = parse_term_expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        fail("expected term");
    }

    Term parse_annotation() {
        Token start = cur();
        Term t = parse_annotation_expr();
        // a bare constant annotation must lie on the grade lattice
        if (t.kind == TermKind::Number && !(t.number >= 0.0 && t.number <= 1.0))
            diags_.push_back(make_error("annotation constant outside [0,1]", start.span));
        return t;
    }

    Term parse_annotation_expr() {
        Term lhs = parse_annotation_mul();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            ArithOp op = at(Tok::Plus) ? ArithOp::Add : ArithOp::Sub;
            advance();
            Term rhs = parse_annotation_mul();
            lhs = Term::make_arith(op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Term parse_annotation_mul() {
        Term lhs = parse_annotation_primary();
        while (at(Tok::Star) || at(Tok::Slash)) {
            ArithOp op = at(Tok::Star) ? ArithOp::Mul : ArithOp::Div;
            advance();
            Term rhs = parse_annotation_primary();
            lhs = Term::make_arith(op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Term parse_annotation_primary() {
        if (at(Tok::Number)) return Term::make_number(advance().number);
        if (at(Tok::Variable)) return Term::make_variable(advance().text);
        if (at(Tok::Ident)) {
            std::string name = cur().text;
            if (name != "min" && name != "max")
                fail("only min and max functions are allowed in annotations");
            advance();
            expect(Tok::LParen, "'('");
            Term a = parse_annotation_expr();
            expect(Tok::Comma, "','");
            Term b = parse_annotation_expr();
            expect(Tok::RParen, "')'");
            return Term::make_arith(name == "min" ? ArithOp::Min : ArithOp::Max, std::move(a),
                                    std::move(b));
        }
        if (at(Tok::LParen)) {
            advance();
            Term inner = parse_annotation_expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        fail("expected annotation");
    }
};

} // namespace parse_detail

// Parses `.faso` text into a Program.  All problems are reported as
// diagnostics with source spans; an error diagnostic means the program
// must not be passed to downstream phases.
inline ParseResult parse_program(std::string_view text, std::string file = "<input>") {
    ParseResult result;
    parse_detail::Lexer lexer(text, file);
    std::vector<parse_detail::Token> tokens = lexer.run(result.diagnostics);
    parse_detail::Parser parser(std::move(tokens), result.diagnostics);
    result.program = parser.run();
    return result;
}

} // namespace faso
