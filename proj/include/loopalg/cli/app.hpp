#pragma once

/**
 * @file app.hpp
 * @brief The loopalg command line, callable in-process.
 *
 *   loopalg --space {cp|hp} --n <int> <command> [args]
 *           [--format text|json|latex] [--max-k K] [--max-degree D]
 *
 * Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
 * LOOPALG_MAX_LEVEL caps every enumeration over levels (default 8).
 */

#include "loopalg/cli/expr.hpp"
#include "loopalg/cli/output.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <regex>
#include <string>
#include <vector>

namespace loopalg::cli {

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_usage = 2;

/// LOOPALG_MAX_LEVEL, or 8 when unset or unparsable.
inline int max_level_from_env()
{
    const char* v = std::getenv("LOOPALG_MAX_LEVEL");
    if (!v)
        return 8;
    try {
        int level = std::stoi(v);
        return level >= 1 ? level : 8;
    } catch (const std::exception&) {
        return 8;
    }
}

/// "[a1 b x1 x3]" for alpha^1 beta xi1 xi3 in Gamma_k; the SM rings print as "[a~1 b~]" / "[a^1 b^ x^]".
inline std::string dual_label(const Ring& r, const Monomial& m, bool latex = false)
{
    std::string out;
    auto put = [&](const std::string& s) {
        if (!out.empty())
            out += ' ';
        out += s;
    };
    std::vector<std::string> xis;
    for (std::size_t g = 0; g < r.size(); ++g) {
        const std::string& name = r.generator(g).name;
        const int e = m[g];
        std::string decor = name.ends_with("_t") ? (latex ? "" : "~") : name.ends_with("_h") ? (latex ? "" : "^") : "";
        auto wrap = [&](const std::string& base) {
            if (!latex || decor.empty())
                return base + decor;
            return std::string(name.ends_with("_t") ? "\\widetilde{" : "\\widehat{") + base + "}";
        };
        if (name.starts_with("alpha")) {
            put(wrap("a") + (latex ? "_{" + std::to_string(e) + "}" : std::to_string(e)));
        } else if (name.starts_with("beta")) {
            if (e)
                put(wrap("b"));
        } else if (name == "xi_h") {
            if (e)
                put(wrap("x"));
        } else if (name.starts_with("xi") && e) {
            xis.push_back(name.substr(2));
        }
    }
    if (!xis.empty()) {
        std::string joined;
        for (const auto& x : xis)
            joined += (joined.empty() ? "" : latex ? " " : " x") + x;
        put(latex ? "x_{" + joined + "}" : "x" + joined);
    }
    return "[" + out + "]";
}

inline std::string format_homology(const HomologyElement& x, bool latex = false)
{
    if (x.is_zero())
        return "0";
    std::string out;
    for (const auto& [m, c] : x.terms()) {
        if (!out.empty())
            out += c < 0 ? " - " : " + ";
        else if (c < 0)
            out += "-";
        const Scalar a = abs(c);
        if (a != 1)
            out += (latex ? latex_scalar(a) + " " : to_short_string(a) + "*");
        out += dual_label(x.ring(), m, latex);
    }
    return out;
}

inline OutputRecord homology_record(const SpaceParams& p, const std::string& command, const std::string& input,
                                    const HomologyElement& x)
{
    OutputRecord r;
    r.space = family_token(p.family);
    r.n = p.n;
    r.command = command;
    r.input = input;
    for (const auto& [m, c] : x.terms())
        r.terms.push_back({to_fraction_string(c), {dual_label(x.ring(), m)}});
    r.text = format_homology(x);
    r.degree = x.degree();
    return r;
}

/// Source classes for the gysin command: a[i], ab[i] (and ax[i], abx[i] on SM x_M SM).
inline HomologyElement parse_source_class(const std::string& token, const Ring& source)
{
    static const std::regex re(R"(\s*(a|ab|ax|abx)\s*\[\s*(\d{1,9})\s*\]\s*)");
    std::smatch match;
    if (!std::regex_match(token, match, re))
        throw ParseError("expected a source class a[i], ab[i], ax[i] or abx[i]", 0);
    const std::string kind = match[1];
    const int i = std::stoi(match[2]);
    auto m = source.one();
    if (i >= source.generator(0).truncation)
        throw ParseError("index out of range for n=" + std::to_string(source.generator(0).truncation), 0);
    m.exps[0] = i;
    m.exps[1] = kind.find('b') != std::string::npos ? 1 : 0;
    if (kind.find('x') != std::string::npos) {
        if (source.size() < 3)
            throw ParseError("x-classes only exist on SM x_M SM (map pV)", 0);
        m.exps[2] = 1;
    }
    return dual(source, m);
}

namespace detail {

struct Options {
    std::string space;
    int n = 0;
    std::string format = "text";
    std::optional<int> max_k;
    int max_degree = 30;
    std::string expr;
    std::string route = "closed";
    std::optional<int> k;
    std::optional<int> m;
    std::string map;
    std::string suite;
};

inline void emit_record(std::ostream& out, const std::string& fmt, const OutputRecord& rec, const std::string& text,
                        const std::string& latex)
{
    if (fmt == "json")
        out << nlohmann::json(rec).dump(2) << "\n";
    else if (fmt == "latex")
        out << latex << "\n";
    else
        out << text << "\n";
}

inline std::string degree_line(const std::optional<int>& from, const std::optional<int>& to)
{
    auto s = [](const std::optional<int>& d) { return d ? std::to_string(*d) : std::string("-"); };
    return "degree: " + s(from) + " -> " + s(to);
}

} // namespace detail

/// Runs the CLI on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    detail::Options o;
    CLI::App app{"Exact string topology coproduct and Goresky-Hingston product on CP^n and HP^n", "loopalg"};
    app.add_option("--space", o.space, "cp or hp")->required()->check(CLI::IsMember({"cp", "hp"}));
    app.add_option("--n", o.n, "n >= 1")->required()->check(CLI::PositiveNumber);
    app.add_option("--format", o.format, "text, json or latex")->check(CLI::IsMember({"text", "json", "latex"}));
    app.add_option("--max-k", o.max_k, "largest level for verification sweeps");
    app.add_option("--max-degree", o.max_degree, "largest degree for the Betti table");
    app.require_subcommand(1);
    app.fallthrough();

    auto* coproduct = app.add_subcommand("coproduct", "coproduct of a loop class, e.g. \"A[3,1]\"");
    coproduct->add_option("expr", o.expr)->required();
    coproduct->add_option("--route", o.route, "closed or pipeline")->check(CLI::IsMember({"closed", "pipeline"}));

    auto* product = app.add_subcommand("product", "Goresky-Hingston product of tensor pairs, e.g. \"s[1,0] x m[1,1]\"");
    product->add_option("expr", o.expr)->required();

    auto* gysin_cmd = app.add_subcommand("gysin", "Gysin map of p_L or p_V:<m> into Gamma_k");
    gysin_cmd->add_option("--k", o.k)->required();
    gysin_cmd->add_option("--map", o.map, "pL or pV:<m>")->required();
    gysin_cmd->add_option("gen", o.expr, "a[i], ab[i], ax[i] or abx[i]")->required();

    auto* cap_cmd = app.add_subcommand("cap", "Thom class cap product on the Gamma_k representative of A/B");
    cap_cmd->add_option("--k", o.k);
    cap_cmd->add_option("--m", o.m);
    cap_cmd->add_option("gen", o.expr)->required();

    auto* table = app.add_subcommand("table", "Betti numbers of H_*(LM, M)");

    auto* verify = app.add_subcommand("verify", "exhaustive verification suites");
    verify->add_option("suite", o.suite)
        ->required()
        ->check(CLI::IsMember({"duality", "coassoc", "pipeline", "presentation", "gysin", "rings"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n"
            << app.get_formatter()->make_help(&app, "loopalg", CLI::AppFormatMode::Normal);
        return exit_usage;
    }

    const SpaceParams params(parse_family(o.space), o.n);
    const int cap_level = max_level_from_env();
    auto sweep_level = [&]() {
        int k = o.max_k.value_or(std::min(6, cap_level));
        if (k > cap_level) {
            err << "warning: --max-k " << k << " capped to LOOPALG_MAX_LEVEL=" << cap_level << "\n";
            k = cap_level;
        }
        return k;
    };

    try {
        if (coproduct->parsed()) {
            const LoopClass x = parse_as<LoopKey, 1>(o.expr, params);
            TensorLoopClass y(params);
            if (o.route == "pipeline") {
                int level = 1;
                for (const auto& [idx, c] : x.terms())
                    level = std::max(level, idx[0].k);
                y = coproduct_pipeline(SpaceCatalog(params, level), x);
            } else {
                y = coproduct_closed(x);
            }
            OutputRecord rec = make_record(params, "coproduct", o.expr, y);
            rec.route = o.route;
            rec.input_degree = x.degree();
            const std::string text = "coproduct(" + format(x) + ") = " + format(y) + "\nterms: " +
                                     std::to_string(y.size()) + "\n" + detail::degree_line(x.degree(), y.degree());
            const std::string tex = "\\vee\\left(" + latex(x) + "\\right) = " + latex(y);
            detail::emit_record(out, o.format, rec, text, tex);
            return exit_ok;
        }
        if (product->parsed()) {
            const TensorCohClass t = parse_as<CohKey, 2>(o.expr, params);
            const CohClass y = gh_product(t);
            OutputRecord rec = make_record(params, "product", o.expr, y);
            rec.input_degree = t.degree();
            std::string text = "product(" + format(t) + ") = " + format(y);
            if (y.degree())
                text += "\ndegree: " + std::to_string(*y.degree());
            std::string tex = latex(t);
            for (std::size_t pos; (pos = tex.find("\\times")) != std::string::npos;)
                tex.replace(pos, 6, "\\circledast");
            detail::emit_record(out, o.format, rec, text, tex + " = " + latex(y));
            return exit_ok;
        }
        if (gysin_cmd->parsed()) {
            const int k = *o.k;
            if (k < 1)
                throw ParseError("k must be >= 1", 0);
            const SpaceCatalog cat(params, k);
            const OrientedSpace gk = cat.gamma(k);
            HomologyElement src, img;
            std::string map_label;
            if (o.map == "pL") {
                src = parse_source_class(o.expr, cat.sm().ring());
                img = gysin(cat.pullback_pL(k), cat.sm(), gk, src);
                map_label = "(p_L)_!";
            } else if (o.map.starts_with("pV:")) {
                int m = 0;
                try {
                    m = std::stoi(o.map.substr(3));
                } catch (const std::exception&) {
                    throw ParseError("malformed --map, expected pV:<m>", 0);
                }
                src = parse_source_class(o.expr, cat.sm_fiber().ring());
                img = gysin(cat.pullback_pV(k, m), cat.sm_fiber(), gk, src);
                map_label = "(p_V)_!";
            } else {
                throw ParseError("unknown --map '" + o.map + "', expected pL or pV:<m>", 0);
            }
            OutputRecord rec = homology_record(params, "gysin", o.expr, img);
            rec.input_degree = src.degree();
            std::string text = map_label + format_homology(src) + " = " + format_homology(img) + "  in H_*(Gamma_" +
                               std::to_string(k) + ")";
            try {
                const LoopClass as_loop = recognize(cat, k, img);
                if (!as_loop.is_zero())
                    text += "\nrepresents: " + format(as_loop);
            } catch (const PipelineError&) {
            }
            text += "\n" + detail::degree_line(src.degree(), img.degree());
            detail::emit_record(out, o.format, rec, text,
                                map_label + format_homology(src, true) + " = " + format_homology(img, true));
            return exit_ok;
        }
        if (cap_cmd->parsed()) {
            const LoopClass x = parse_as<LoopKey, 1>(o.expr, params);
            if (x.is_zero())
                throw ParseError("cap needs a nonzero class", 0);
            const int k = o.k.value_or(x.terms().begin()->first[0].k);
            for (const auto& [idx, c] : x.terms())
                if (idx[0].k != k)
                    throw ParseError("all generators must live at level k=" + std::to_string(k), 0);
            if (o.m && (*o.m < 1 || *o.m > k - 1))
                throw ParseError("--m must satisfy 1 <= m <= k-1", 0);
            const SpaceCatalog cat(params, k);
            HomologyElement rep(cat.gamma(k).ring());
            for (const auto& [idx, c] : x.terms())
                rep += c * representative(cat, idx[0]);
            HomologyElement total(rep.ring());
            std::string text, tex;
            for (const auto& term : cap_with_thom(cat, k, rep)) {
                if (o.m && term.m != *o.m)
                    continue;
                total += term.value;
                text += (text.empty() ? "" : "\n") + std::string("m=") + std::to_string(term.m) + ": " +
                        format_homology(term.value) + " x [t_" + std::to_string(term.m) + "]";
                tex += (tex.empty() ? "" : " + ") + std::string("\\left(") + format_homology(term.value, true) +
                       "\\right) \\times [t_{" + std::to_string(term.m) + "}]";
            }
            if (text.empty())
                text = "0 (no Thom class terms at k=1)";
            OutputRecord rec = homology_record(params, "cap", o.expr, total);
            rec.input_degree = rep.degree();
            detail::emit_record(out, o.format, rec, text, tex.empty() ? "0" : tex);
            return exit_ok;
        }
        if (table->parsed()) {
            const BettiTable t = betti_table(params, o.max_degree, cap_level);
            if (t.truncated)
                err << "warning: levels above LOOPALG_MAX_LEVEL=" << cap_level << " would contribute; table truncated\n";
            if (o.format == "json") {
                nlohmann::json rows = nlohmann::json::array();
                for (const auto& [d, b] : t.rows)
                    rows.push_back({{"degree", d}, {"betti", b}});
                nlohmann::json j = envelope(params, "table");
                j["result"] = {{"rows", rows}, {"truncated", t.truncated}, {"max_level", cap_level}};
                out << j.dump(2) << "\n";
            } else if (o.format == "latex") {
                out << "\\begin{tabular}{rr}\n$d$ & $b_d$ \\\\\n\\hline\n";
                for (const auto& [d, b] : t.rows)
                    out << d << " & " << b << " \\\\\n";
                out << "\\end{tabular}\n";
            } else {
                out << "degree  betti\n";
                for (const auto& [d, b] : t.rows)
                    out << std::to_string(d) << std::string(8 - std::min<std::size_t>(7, std::to_string(d).size()), ' ')
                        << b << "\n";
            }
            return exit_ok;
        }
        if (verify->parsed()) {
            const int k = sweep_level();
            VerificationReport rep;
            if (o.suite == "duality")
                rep = verify_duality(params, k);
            else if (o.suite == "coassoc")
                rep = verify_coassociativity(params, k);
            else if (o.suite == "pipeline")
                rep = verify_pipeline(SpaceCatalog(params, k), k);
            else if (o.suite == "presentation")
                rep = verify_presentation(params, k, std::max(12, k));
            else if (o.suite == "gysin")
                rep = verify_gysin(SpaceCatalog(params, k), k);
            else
                rep = verify_rings(params, k);
            if (o.format == "json") {
                nlohmann::json j = envelope(params, "verify");
                j["result"] = {{"suite", o.suite},
                               {"pass", rep.passed()},
                               {"checks", rep.checks},
                               {"max_k", k},
                               {"counterexample", rep.counterexample ? nlohmann::json(*rep.counterexample)
                                                                     : nlohmann::json(nullptr)}};
                out << j.dump(2) << "\n";
            } else if (o.format == "latex") {
                out << "\\text{" << o.suite << ": " << rep.summary() << "}\n";
            } else {
                out << o.suite << ": " << rep.summary() << "\n";
            }
            return rep.passed() ? exit_ok : exit_verify_failed;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace loopalg::cli
