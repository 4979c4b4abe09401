// Recursive-descent parser for the expression grammar:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' ['-'] integer)?
//   primary := integer | identifier | '(' expr ')'
//
// Rational literals p/q fall out of '/' between integer literals.

#include <cctype>
#include <charconv>

#include "invlag/expr.hpp"

namespace invlag
{

namespace
{

class Parser
{
public:
    Parser(std::string_view text, const ExprContext &ctx) : text_(text), ctx_(ctx) {}

    Expr parse_all()
    {
        skip_space();
        if (pos_ == text_.size())
            throw ParseError("empty expression", pos_);
        Expr e = expr();
        skip_space();
        if (pos_ != text_.size())
            throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
        return e;
    }

private:
    std::string_view text_;
    const ExprContext &ctx_;
    std::size_t pos_ = 0;

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
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

    Expr expr()
    {
        Expr e = term();
        while (true) {
            if (accept('+'))
                e = e + term();
            else if (accept('-'))
                e = e - term();
            else
                return e;
        }
    }

    Expr term()
    {
        Expr e = unary();
        while (true) {
            if (accept('*')) {
                e = e * unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Expr d = unary();
                if (d.is_zero())
                    throw ParseError("division by zero", at);
                e = e / d;
            } else {
                return e;
            }
        }
    }

    Expr unary()
    {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return power();
    }

    Expr power()
    {
        Expr base = primary();
        if (!accept('^'))
            return base;
        skip_space();
        bool negative = accept('-');
        skip_space();
        std::size_t at = pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("exponent must be an integer literal", at);
        long e = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            e = e * 10 + (text_[pos_++] - '0');
            if (e > 1000)
                throw ParseError("exponent too large", at);
        }
        if (negative && base.is_zero())
            throw ParseError("negative power of zero", at);
        return base.pow(negative ? -static_cast<int>(e) : static_cast<int>(e));
    }

    Expr primary()
    {
        skip_space();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of expression", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            return Expr(Rational(mpz_class(std::string(text_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            return identifier(text_.substr(start, pos_ - start), start);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    static bool parse_index(std::string_view digits, int &out)
    {
        if (digits.empty() || digits.size() > 6 || digits[0] == '0')
            return false;
        for (char ch : digits)
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                return false;
        std::from_chars(digits.data(), digits.data() + digits.size(), out);
        return true;
    }

    // Recognizes t, q<k>, v<k>, d<m>q<k>; returns false for anything else.
    static bool jet_identifier(std::string_view id, VarId &out)
    {
        int k = 0;
        if (id == "t") {
            out = VarId::time();
            return true;
        }
        if (id.size() >= 2 && id[0] == 'q' && parse_index(id.substr(1), k)) {
            out = VarId::q(k);
            return true;
        }
        if (id.size() >= 2 && id[0] == 'v' && parse_index(id.substr(1), k)) {
            out = VarId::v(k);
            return true;
        }
        if (id.size() >= 4 && id[0] == 'd' && id[1] >= '1' && id[1] <= '9' && id[2] == 'q' &&
            parse_index(id.substr(3), k)) {
            out = VarId::jet(k, id[1] - '0');
            return true;
        }
        return false;
    }

    Expr identifier(std::string_view id, std::size_t at)
    {
        VarId v;
        if (jet_identifier(id, v)) {
            if (v.kind == VarKind::time && !ctx_.uses_time)
                throw ParseError("time variable 't' not allowed here", at);
            if (v.index > ctx_.n)
                throw ParseError("index of '" + std::string(id) + "' exceeds dimension " + std::to_string(ctx_.n), at);
            if (v.order > ctx_.max_jet_order)
                throw ParseError("jet order of '" + std::string(id) + "' exceeds " + std::to_string(ctx_.max_jet_order), at);
            if (v.order > 4)
                throw ParseError("jet order above 4 in '" + std::string(id) + "'", at);
            return Expr::var(v);
        }
        std::string name(id);
        for (const auto &p : ctx_.parameters)
            if (p == name)
                return Expr::param(name);
        throw ParseError("unknown identifier '" + name + "'", at);
    }
};

} // namespace

Expr parse(std::string_view text, const ExprContext &ctx) { return Parser(text, ctx).parse_all(); }

} // namespace invlag
