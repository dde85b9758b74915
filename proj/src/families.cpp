#include "taildep/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "taildep/io.hpp"

namespace taildep {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    }
    return out;
}

// identifiers compare case-insensitively with '-' and '_' interchangeable;
// arguments (numbers, file paths) are left untouched
std::string norm_ident(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '-') c = '_';
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

// split at top level (depth 0) on the given delimiter
std::vector<std::string> split_top(const std::string& s, char delim) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == delim && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double num(const std::string& s, const std::string& ctx) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(s, &pos);
        if (pos != s.size()) fail("family " + ctx + ": bad number '" + s + "'");
        return x;
    } catch (const std::invalid_argument&) {
        fail("family " + ctx + ": bad number '" + s + "'");
    } catch (const std::out_of_range&) {
        fail("family " + ctx + ": number out of range '" + s + "'");
    }
}

std::vector<double> nums(const std::vector<std::string>& parts, const std::string& ctx) {
    std::vector<double> out;
    out.reserve(parts.size());
    for (const auto& p : parts) out.push_back(num(p, ctx));
    return out;
}

Rotation parse_rotation(const std::string& raw) {
    const std::string s = norm_ident(raw);
    if (s == "sigma1") return Rotation::Sigma1;
    if (s == "sigma2") return Rotation::Sigma2;
    if (s == "tau") return Rotation::Tau;
    if (s == "sigma1sigma2" || s == "survival") return Rotation::Sigma1Sigma2;
    fail("unknown rotation '" + s + "' (expected sigma1, sigma2, tau or sigma1sigma2)");
}

FamilyModel parse_impl(const std::string& text);

FamilyModel smix_model(double w1, double th1, double w2, double th2) {
    FamilyModel m;
    std::ostringstream os;
    os << "smix(" << w1 << "," << th1 << "," << w2 << "," << th2 << ")";
    m.canonical = os.str();
    m.copula = Copula::mixture(
        {w1, w2}, {Copula::singular_nelsen(th1),
                   Copula::rotated(Rotation::Tau, Copula::singular_nelsen(th2))});
    m.tdf = TailDependenceFunction::convex_mixture(
        {w1, w2}, {TailDependenceFunction::singular_tail(th1),
                   TailDependenceFunction::singular_tail(th2).transposed()});
    return m;
}

// closed-form tail function of the survival copula, where one is known
std::optional<TailDependenceFunction> survival_tdf(const std::string& head,
                                                   const std::vector<double>& a,
                                                   const FamilyModel& base) {
    if (head == "mo") return TailDependenceFunction::marshall_olkin_tail(a[0], a[1]);
    if (head == "gumbel") return TailDependenceFunction::survival_gumbel_tail(a[0]);
    if (head == "clayton") return TailDependenceFunction::zero();
    if (head == "singular" || head == "smix") return TailDependenceFunction::zero();
    // radially symmetric families keep their tail function under survival rotation
    if (head == "pi" || head == "m" || head == "w" || head == "frechet" || head == "t") {
        return base.tdf;
    }
    return std::nullopt;
}

FamilyModel parse_impl(const std::string& text) {
    if (text.empty()) fail("empty family expression");
    const auto open = text.find('(');
    const std::string head = norm_ident(text.substr(0, open));
    std::vector<std::string> parts;
    if (open != std::string::npos) {
        if (text.back() != ')') fail("family '" + text + "': unbalanced parentheses");
        parts = split_top(text.substr(open + 1, text.size() - open - 2), ',');
    }
    auto arity = [&](std::size_t k) {
        if (parts.size() != k) {
            fail("family '" + head + "': expected " + std::to_string(k) + " argument(s)");
        }
    };

    FamilyModel m;
    if (head == "pi" || head == "independence") {
        arity(0);
        m = {"pi", Copula::independence(), TailDependenceFunction::zero()};
    } else if (head == "m" || head == "comonotone") {
        arity(0);
        m = {"m", Copula::comonotone(), TailDependenceFunction::comonotone()};
    } else if (head == "w" || head == "countermonotone") {
        arity(0);
        m = {"w", Copula::countermonotone(), TailDependenceFunction::zero()};
    } else if (head == "frechet") {
        arity(2);
        const auto a = nums(parts, head);
        m = {text, Copula::frechet(a[0], a[1]), TailDependenceFunction::frechet_tail(a[0])};
    } else if (head == "mo") {
        arity(2);
        const auto a = nums(parts, head);
        m = {text, Copula::marshall_olkin(a[0], a[1]), TailDependenceFunction::zero()};
    } else if (head == "smo") {
        arity(2);
        const auto a = nums(parts, head);
        m = {text, Copula::rotated(Rotation::Sigma1Sigma2, Copula::marshall_olkin(a[0], a[1])),
             TailDependenceFunction::marshall_olkin_tail(a[0], a[1])};
    } else if (head == "clayton") {
        arity(1);
        const auto a = nums(parts, head);
        m = {text, Copula::clayton(a[0]), TailDependenceFunction::clayton_tail(a[0])};
    } else if (head == "gumbel") {
        arity(1);
        const auto a = nums(parts, head);
        m = {text, Copula::gumbel(a[0]), TailDependenceFunction::zero()};
    } else if (head == "sgumbel") {
        arity(1);
        const auto a = nums(parts, head);
        m = {text, Copula::rotated(Rotation::Sigma1Sigma2, Copula::gumbel(a[0])),
             TailDependenceFunction::survival_gumbel_tail(a[0])};
    } else if (head == "singular") {
        arity(1);
        const auto a = nums(parts, head);
        m = {text, Copula::singular_nelsen(a[0]), TailDependenceFunction::singular_tail(a[0])};
    } else if (head == "smix") {
        arity(4);
        const auto a = nums(parts, head);
        m = smix_model(a[0], a[1], a[2], a[3]);
    } else if (head == "t" || head == "student_t") {
        arity(2);
        const auto a = nums(parts, head);
        m = {text, Copula::student_t(a[0], a[1]), TailDependenceFunction::student_t_tail(a[0], a[1])};
    } else if (head == "asym_gumbel") {
        arity(3);
        const auto a = nums(parts, head);
        m = {text, std::nullopt, TailDependenceFunction::asym_gumbel_tail(a[0], a[1], a[2])};
    } else if (head == "asym_galambos") {
        arity(3);
        const auto a = nums(parts, head);
        m = {text, std::nullopt, TailDependenceFunction::asym_galambos_tail(a[0], a[1], a[2])};
    } else if (head == "pickands") {
        arity(1);
        auto [w, a] = read_pickands_csv(parts[0]);
        m = {text, std::nullopt,
             TailDependenceFunction::survival_ev_tail(
                 PickandsFunction::tabulated(std::move(w), std::move(a)))};
    } else if (head == "rot") {
        arity(2);
        const Rotation rot = parse_rotation(parts[0]);
        FamilyModel base = parse_impl(parts[1]);
        m.canonical = "rot(" + parts[0] + "," + base.canonical + ")";
        if (base.copula) m.copula = Copula::rotated(rot, *base.copula);
        if (rot == Rotation::Tau) {
            if (base.tdf) m.tdf = base.tdf->transposed();
        } else if (rot == Rotation::Sigma1Sigma2) {
            const auto inner_open = parts[1].find('(');
            const std::string inner_head = norm_ident(parts[1].substr(0, inner_open));
            std::vector<double> inner_args;
            if (inner_open != std::string::npos) {
                for (const auto& p :
                     split_top(parts[1].substr(inner_open + 1, parts[1].size() - inner_open - 2),
                               ',')) {
                    try {
                        inner_args.push_back(num(p, inner_head));
                    } catch (const std::invalid_argument&) {
                        inner_args.clear();
                        break;
                    }
                }
            }
            m.tdf = survival_tdf(inner_head, inner_args, base);
        }
        // sigma1 / sigma2 corners carry no closed-form tail function here
    } else if (head == "mix") {
        if (open == std::string::npos) fail("mix: expected mix(w,family;...)");
        const auto groups = split_top(text.substr(open + 1, text.size() - open - 2), ';');
        if (groups.size() < 2) fail("mix: need at least two components");
        std::vector<double> ws;
        std::vector<Copula> cops;
        std::vector<TailDependenceFunction> tdfs;
        bool all_cop = true, all_tdf = true;
        std::ostringstream cname;
        cname << "mix(";
        for (std::size_t i = 0; i < groups.size(); ++i) {
            const auto wf = split_top(groups[i], ',');
            if (wf.size() < 2) fail("mix: each component must be 'weight,family'");
            ws.push_back(num(wf[0], "mix"));
            std::string sub = groups[i].substr(groups[i].find(',') + 1);
            FamilyModel comp = parse_impl(sub);
            if (comp.copula) cops.push_back(*comp.copula); else all_cop = false;
            if (comp.tdf) tdfs.push_back(*comp.tdf); else all_tdf = false;
            if (i) cname << ";";
            cname << ws.back() << "," << comp.canonical;
        }
        cname << ")";
        m.canonical = cname.str();
        if (all_cop) m.copula = Copula::mixture(ws, std::move(cops));
        if (all_tdf) m.tdf = TailDependenceFunction::convex_mixture(ws, std::move(tdfs));
    } else {
        fail("unknown family '" + head + "'");
    }
    if (m.canonical.empty()) m.canonical = text;
    return m;
}

} // namespace

FamilyModel parse_family(const std::string& text) { return parse_impl(strip_spaces(text)); }

} // namespace taildep
