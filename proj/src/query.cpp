#include "fwt/query.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fwt/rates.hpp"

namespace fwt {

ParseError::ParseError(std::string argument, std::size_t column, const std::string& what)
    : std::invalid_argument(argument + ":" + std::to_string(column) + ": " + what),
      argument_(std::move(argument)),
      column_(column)
{
}

namespace {

class Cursor {
public:
    Cursor(const std::string& text, std::string argument) : text_(text), arg_(std::move(argument)) {}

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end()
    {
        skip_ws();
        return pos_ == text_.size();
    }

    bool peek(char c)
    {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c)
    {
        if (!peek(c)) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    bool accept_word(const std::string& w)
    {
        skip_ws();
        if (text_.compare(pos_, w.size(), w) == 0) {
            pos_ += w.size();
            return true;
        }
        return false;
    }

    // Unsigned-or-signed real number, no surrounding whitespace handling of
    // the sign beyond what from_chars accepts.
    double number()
    {
        skip_ws();
        std::size_t start = pos_;
        bool plus = false;
        if (pos_ < text_.size() && text_[pos_] == '+') {
            plus = true;  // from_chars rejects a leading '+'
            ++start;
        }
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + text_.size(), v);
        if (ec != std::errc() || !std::isfinite(v) || (plus && ptr == text_.data() + start)) {
            fail("expected a number");
        }
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return v;
    }

    // a | bi | a+bi | a-bi
    cplx complex_number()
    {
        const std::size_t start = (skip_ws(), pos_);
        const double a = number();
        if (pos_ < text_.size() && text_[pos_] == 'i') {
            ++pos_;
            return {0.0, a};
        }
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            const double b = number();
            if (pos_ >= text_.size() || text_[pos_] != 'i') {
                pos_ = start;
                fail("expected imaginary part ending in 'i'");
            }
            ++pos_;
            return {a, b};
        }
        return {a, 0.0};
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(arg_, pos_ + 1, what); }

    std::size_t pos() const { return pos_; }

private:
    const std::string& text_;
    std::string arg_;
    std::size_t pos_ = 0;
};

ChannelState parse_state_body(Cursor& c)
{
    std::array<cplx, 4> g;
    c.expect('(');
    for (int k = 0; k < 4; ++k) {
        if (k > 0) c.expect(',');
        g[k] = c.complex_number();
    }
    c.expect(')');
    return ChannelState{g[0], g[1], g[2], g[3]};
}

ChannelState parse_effective_body(Cursor& c)
{
    std::array<double, 4> v;
    c.expect('(');
    for (int k = 0; k < 4; ++k) {
        if (k > 0) c.expect(',');
        c.skip_ws();
        const std::size_t at = c.pos();
        v[k] = c.number();
        if (v[k] < 0.0) {
            throw ParseError("literal", at + 1, "effective gains must be >= 0");
        }
    }
    c.expect(')');
    // real gains with 2|h|^2 equal to the effective value
    return ChannelState::real(std::sqrt(v[0] / 2.0), std::sqrt(v[1] / 2.0), std::sqrt(v[2] / 2.0),
                              std::sqrt(v[3] / 2.0));
}

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string cnum(cplx z)
{
    return num(z.real()) + (z.imag() < 0.0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

void print_rates(std::ostringstream& os, const RateTriple& r)
{
    os << "integrands (bits): r1=" << num(r.r1) << " r2=" << num(r.r2) << " rsum=" << num(r.rsum) << "\n";
}

void print_decision(std::ostringstream& os, const PowerDecision& d)
{
    os << "powers: P1=" << num(d.p1) << " P2=" << num(d.p2) << " Q1=" << num(d.q1) << " Q2=" << num(d.q2) << "\n";
}

}  // namespace

StateLiteral parse_state_literal(const std::string& text)
{
    Cursor c(text, "literal");
    StateLiteral lit;
    if (c.accept_word("eff")) {
        lit.effective = true;
        lit.states.push_back(parse_effective_body(c));
    } else if (c.accept_word("state")) {
        lit.states.push_back(parse_state_body(c));
        if (c.peek(';')) {
            c.expect(';');
            if (!c.accept_word("state")) {
                c.fail("expected 'state'");
            }
            lit.states.push_back(parse_state_body(c));
        }
    } else {
        c.fail("expected 'state' or 'eff'");
    }
    if (!c.at_end()) {
        c.fail("unexpected trailing input");
    }
    return lit;
}

std::vector<double> parse_number_list(const std::string& text, const std::string& argument)
{
    Cursor c(text, argument);
    std::vector<double> out;
    out.push_back(c.number());
    while (c.peek(',')) {
        c.expect(',');
        out.push_back(c.number());
    }
    if (!c.at_end()) {
        c.fail("unexpected trailing input");
    }
    return out;
}

std::string run_query(const QueryInput& in)
{
    const StateLiteral lit = parse_state_literal(in.literal);
    const Scheme scheme    = parse_scheme(in.scheme);

    if (in.powers.has_value() == in.duals.has_value()) {
        throw std::invalid_argument("give exactly one of powers or duals");
    }
    if ((scheme == Scheme::Sba) != (lit.states.size() == 2)) {
        throw std::invalid_argument(scheme == Scheme::Sba ? "sba needs two states: state(...); state(...)"
                                                          : "two states are only meaningful for sba");
    }

    const ChannelState& s = lit.states[0];
    std::ostringstream os;
    os << "scheme: " << scheme_name(scheme) << "\n";
    for (std::size_t i = 0; i < lit.states.size(); ++i) {
        const ChannelState& t = lit.states[i];
        os << (lit.states.size() == 2 ? (i == 0 ? "odd " : "even ") : "") << "state: h1=" << cnum(t.h1)
           << " h2=" << cnum(t.h2) << " g1=" << cnum(t.g1) << " g2=" << cnum(t.g2) << "\n";
    }
    const EffectiveState eff = EffectiveState::from_channel(s);
    os << "effective gains: h1=" << num(eff.h1) << " h2=" << num(eff.h2) << " g1=" << num(eff.g1)
       << " g2=" << num(eff.g2) << "\n";

    PowerDecision d;
    if (in.powers) {
        const std::vector<double> p = parse_number_list(*in.powers, "powers");
        if (p.size() != 2 && p.size() != 4) {
            throw std::invalid_argument("powers takes 2 or 4 values");
        }
        for (double v : p) {
            if (v < 0.0) throw std::invalid_argument("powers must be >= 0");
        }
        d = PowerDecision{p[0], p[1], p.size() == 4 ? p[2] : 0.0, p.size() == 4 ? p[3] : 0.0};
        if ((scheme == Scheme::Esa || scheme == Scheme::Sba) && (d.q1 != 0.0 || d.q2 != 0.0)) {
            throw std::invalid_argument("jamming powers need scheme esa_cj or gs_cj");
        }
        print_decision(os, d);
    } else {
        const std::vector<double> l = parse_number_list(*in.duals, "duals");
        if (l.size() != 2 || !(l[0] > 0.0) || !(l[1] > 0.0)) {
            throw std::invalid_argument("duals takes two values > 0");
        }
        const DualVars duals{l[0], l[1]};
        os << "duals: lambda1=" << num(duals.lambda1) << " lambda2=" << num(duals.lambda2) << "\n";
        switch (scheme) {
        case Scheme::Esa: {
            const EsaPolicy p = esa_case_policy(eff, duals);
            d                 = PowerDecision{p.p1, p.p2, 0.0, 0.0};
            os << "branch: " << branch_label(p.branch) << (p.uncertified_fallback ? " (uncertified fallback)" : "")
               << "\n";
            print_decision(os, d);
            const auto r = esa_kkt_residual(eff, d.p1, d.p2, duals);
            os << "kkt residuals: " << num(r[0]) << " " << num(r[1]) << "\n";
            os << "lagrangian (nats): " << num(esa_lagrangian(eff, duals, d.p1, d.p2)) << "\n";
            break;
        }
        case Scheme::EsaCj: {
            const EsaCjPolicy p = esa_cj_case_policy(eff, duals);
            d                   = p.d;
            os << "branch: " << branch_label(p) << (p.uncertified_fallback ? " (uncertified fallback)" : "") << "\n";
            print_decision(os, d);
            const auto r = esa_cj_kkt_residual(eff, d, duals);
            os << "kkt residuals: " << num(r[0]) << " " << num(r[1]) << " " << num(r[2]) << " " << num(r[3]) << "\n";
            os << "lagrangian (nats): " << num(esa_cj_lagrangian(eff, duals, d)) << "\n";
            break;
        }
        case Scheme::GsCj: {
            const GsCjPolicy p = gs_cj_baseline_policy(s, duals);
            d                  = p.d;
            os << "region: " << region_label(p.region) << " [" << kGsCjBaselineTag << "]\n";
            print_decision(os, d);
            break;
        }
        case Scheme::Sba:
            throw std::invalid_argument("sba has no multiplier policy; give powers");
        }
    }

    switch (scheme) {
    case Scheme::GsCj: print_rates(os, rates_gs_cj(s, d)); break;
    case Scheme::Sba: print_rates(os, rates_sba(sba_expand(lit.states[0], lit.states[1]), d.p1, d.p2)); break;
    case Scheme::Esa: print_rates(os, rates_esa(s, d.p1, d.p2)); break;
    case Scheme::EsaCj: print_rates(os, rates_esa_cj(s, d)); break;
    }
    return os.str();
}

}  // namespace fwt
