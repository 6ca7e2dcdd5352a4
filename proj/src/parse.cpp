#include "sgeom/parse.hpp"

#include <cctype>

namespace sgeom {

ParseError::ParseError(const std::string &msg, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line),
      column_(column) {}

namespace {

class Parser {
  public:
    Parser(std::string_view text, const ChartPtr &chart, int line, int column)
        : s_(text), chart_(chart), line_(line), col0_(column) {}

    Form run() {
        skip();
        if (at_end())
            fail("empty expression");
        Form f = expr();
        skip();
        if (!at_end())
            fail(std::string("unexpected '") + s_[pos_] + "'");
        return f;
    }

  private:
    [[noreturn]] void fail(const std::string &msg) const {
        throw ParseError(msg, line_, col0_ + static_cast<int>(pos_));
    }
    bool at_end() const { return pos_ >= s_.size(); }
    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool eat(char c) {
        skip();
        if (!at_end() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool peek_digit() {
        skip();
        return !at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }
    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

    Form expr() {
        Form acc(chart_);
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        Form t = term();
        acc = neg ? -t : t;
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Form term() {
        Form acc = unary();
        for (;;) {
            if (eat('*')) {
                acc = acc * unary();
            } else if (eat('/')) {
                std::size_t at = pos_;
                Form den = unary();
                if (!den.is_degree(0) || den.is_zero()) {
                    pos_ = at;
                    fail("division by a non-function or zero");
                }
                try {
                    acc = acc * Form::function(invert(den.function_part()));
                } catch (const NotAUnit &) {
                    pos_ = at;
                    fail("division by a non-unit");
                }
            } else {
                return acc;
            }
        }
    }

    Form unary() {
        if (eat('-'))
            return -unary();
        return power();
    }

    Form power() {
        Form base = primary();
        while (eat('^')) {
            skip();
            bool neg = false;
            std::size_t at = pos_;
            if (!at_end() && s_[pos_] == '-') {
                neg = true;
                ++pos_;
            }
            if (peek_digit()) {
                long e = integer();
                if (neg)
                    e = -e;
                if (e < 0) {
                    if (!base.is_degree(0) || base.is_zero()) {
                        pos_ = at;
                        fail("negative power of a non-function");
                    }
                    try {
                        base = Form::function(base.function_part().pow(static_cast<int>(e)));
                    } catch (const NotAUnit &) {
                        pos_ = at;
                        fail("negative power of a non-unit");
                    }
                } else {
                    Form r = Form::constant(chart_, 1);
                    for (long k = 0; k < e; ++k)
                        r = r * base;
                    base = r;
                }
            } else {
                if (neg)
                    fail("expected exponent");
                base = base * primary();
            }
        }
        return base;
    }

    long integer() {
        skip();
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected integer");
        if (pos_ - start > 9)
            fail("exponent too large");
        return std::stol(std::string(s_.substr(start, pos_ - start)));
    }

    Form primary() {
        skip();
        if (at_end())
            fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Form f = expr();
            if (!eat(')'))
                fail("expected ')'");
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            Rational v(std::string(s_.substr(start, pos_ - start)));
            return Form::constant(chart_, v);
        }
        if (ident_start(c)) {
            std::size_t start = pos_;
            while (!at_end() && ident_char(s_[pos_]))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (auto g = chart_->find(name))
                return Form::function(SuperElement::generator(chart_, *g));
            if (name == "d" && eat('(')) {
                skip();
                std::size_t at = pos_;
                while (!at_end() && ident_char(s_[pos_]))
                    ++pos_;
                std::string inner(s_.substr(at, pos_ - at));
                auto g = chart_->find(inner);
                if (!g) {
                    pos_ = at;
                    fail("unknown generator '" + inner + "'");
                }
                if (!eat(')'))
                    fail("expected ')'");
                return Form::differential(chart_, *g);
            }
            if (name.size() > 1 && name[0] == 'd')
                if (auto g = chart_->find(name.substr(1)))
                    return Form::differential(chart_, *g);
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    const ChartPtr &chart_;
    int line_, col0_;
    std::size_t pos_ = 0;
};

} // namespace

Form parse_form(std::string_view text, const ChartPtr &chart, int line, int column) {
    return Parser(text, chart, line, column).run();
}

SuperElement parse_element(std::string_view text, const ChartPtr &chart, int line, int column) {
    Form f = parse_form(text, chart, line, column);
    if (!f.is_degree(0))
        throw ParseError("expected a function, got a differential form", line, column);
    auto v = f.function_part();
    return v.chart() ? v : SuperElement(chart);
}

} // namespace sgeom
