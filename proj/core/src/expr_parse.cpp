#include "confalg/expr.hpp"

#include <cctype>
#include <stdexcept>

namespace confalg {

namespace {

// recursive-descent reader for the prefix text form produced by serialize()
class Reader {
public:
    Reader(const std::string& text, const ExprContext& ctx) : text_(text), ctx_(ctx) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return e;
    }

private:
    const std::string& text_;
    ExprContext ctx_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " +
                                    what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        return text_[pos_];
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) fail("expected identifier");
        return text_.substr(start, pos_ - start);
    }

    long long number() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start) fail("expected number");
        return std::stoll(text_.substr(start, pos_ - start));
    }

    std::vector<ExprPtr> args_until_close() {
        std::vector<ExprPtr> out;
        out.push_back(expr());
        while (peek() == ',') {
            ++pos_;
            out.push_back(expr());
        }
        expect(')');
        return out;
    }

    ExprPtr expr() {
        if (peek() == '0') {
            ++pos_;
            return expr_zero(ctx_, Bidegree(0, 0));
        }
        std::string head = ident();
        expect('(');
        if (head == "gen") {
            std::string name = ident();
            expect(')');
            return expr_gen(ctx_, name);
        }
        if (head == "sc") {
            long long c = number();
            expect(',');
            ExprPtr x = expr();
            expect(')');
            return expr_scalar(fp_reduce(c, ctx_.p), x);
        }
        if (head == "q") {
            long long s = number();
            expect(',');
            ExprPtr x = expr();
            expect(')');
            return expr_q(s, x);
        }
        if (head == "ad") {
            long long i = number();
            expect(',');
            ExprPtr op = expr();
            expect(',');
            ExprPtr arg = expr();
            expect(')');
            return expr_ad(i, op, arg);
        }
        if (head == "br") {
            ExprPtr a = expr();
            expect(',');
            ExprPtr b = expr();
            expect(')');
            return expr_bracket(a, b);
        }
        if (head == "sum") return expr_sum(args_until_close());
        if (head == "mul") return expr_product(args_until_close());
        if (head == "xi" || head == "beta" || head == "bxi" || head == "zeta") {
            ExprPtr x = expr();
            expect(')');
            if (head == "xi") return expr_xi(x);
            if (head == "beta") return expr_beta(x);
            if (head == "bxi") return expr_betaxi(x);
            return expr_zeta(x);
        }
        fail("unknown node tag '" + head + "'");
    }
};

} // namespace

ExprPtr parse_expr(const std::string& text, const ExprContext& ctx) {
    return Reader(text, ctx).run();
}

} // namespace confalg
