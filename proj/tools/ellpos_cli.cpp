// Command-line front end: exact counts, S values, interval/chain listings,
// lattice Moebius checks, and truncated Cohen-Lenstra measures.
//
// Exit codes: 0 success, 1 failed verification or method disagreement,
// 2 usage or domain error, 3 resource guard hit, 4 internal inconsistency.

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ellpos/ellpos.hpp"
#include "ellpos/emit.hpp"

using namespace ellpos;

namespace {

enum class Format { text, json, csv };

Format parse_format(const std::string& s) {
    if (s == "text") return Format::text;
    if (s == "json") return Format::json;
    return Format::csv;
}

void add_format_flag(CLI::App* cmd, std::string& fmt) {
    cmd->add_option("--format", fmt, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
}

// One value plus its input context, rendered in any of the three formats.
void emit_scalar(Format fmt, const std::string& command,
                 const std::vector<std::pair<std::string, std::string>>& fields,
                 const std::string& value) {
    switch (fmt) {
    case Format::text:
        std::cout << value << "\n";
        return;
    case Format::json: {
        Json j{{"command", command}};
        for (const auto& [k, v] : fields) j[k] = v;
        j["value"] = value;
        std::cout << j.dump() << "\n";
        return;
    }
    case Format::csv: {
        std::vector<std::string> header, row;
        for (const auto& [k, v] : fields) {
            header.push_back(k);
            row.push_back(v);
        }
        header.push_back("value");
        row.push_back(value);
        std::cout << csv_row(header) << csv_row(row);
        return;
    }
    }
}

std::size_t default_max_interval() {
    const char* env = std::getenv("ELLPOS_MAX_INTERVAL");
    if (!env || !*env) return SOptions{}.max_open_interval;
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::string_view(env).size(), value);
    if (ec != std::errc() || *ptr != '\0')
        throw std::invalid_argument(std::string("ELLPOS_MAX_INTERVAL is not a number: ") + env);
    return value;
}

std::string chain_text(const Chain& chain) {
    std::string out = "{";
    for (std::size_t i = 0; i < chain.links.size(); ++i) {
        if (i) out += ',';
        out += chain.links[i].str();
    }
    return out + "}";
}

struct Args {
    std::uint64_t ell = 3;
    std::string a, c;
    std::string format = "text";
    std::string method = "both";
    std::string sweep = "structure";
    unsigned bound = 0;
    unsigned product_terms = 64;
    unsigned precision = 128;
    int order_bound = -1;
    std::uint64_t max_order = OracleLimits{}.max_order;
    std::size_t max_interval = 0;
    bool max_interval_given = false; // flag beats env beats built-in default
    std::size_t limit = 1u << 20;
    bool dump_lattice = false;
    bool no_chain_check = false;

    SOptions s_options() const {
        SOptions opts;
        opts.max_open_interval = max_interval_given ? max_interval : default_max_interval();
        return opts;
    }
    OracleLimits oracle_limits() const {
        OracleLimits limits;
        limits.max_order = max_order;
        return limits;
    }
};

int run_pair_count(const Args& args, const std::string& command) {
    GroupClass a = GroupClass::parse(args.ell, args.a);
    GroupClass c = GroupClass::parse(args.ell, args.c);
    Count value = command == "sub"   ? subgroup_count(a, c)
                  : command == "inj" ? injection_count(a, c)
                                     : surjection_count(c, a);
    emit_scalar(parse_format(args.format), command,
                {{"ell", std::to_string(args.ell)}, {"a", a.str()}, {"c", c.str()}}, count_str(value));
    return 0;
}

int run_aut(const Args& args) {
    GroupClass a = GroupClass::parse(args.ell, args.a);
    emit_scalar(parse_format(args.format), "aut", {{"ell", std::to_string(args.ell)}, {"a", a.str()}},
                count_str(automorphism_count(a)));
    return 0;
}

int run_s(const Args& args) {
    GroupClass a = GroupClass::parse(args.ell, args.a);
    GroupClass c = GroupClass::parse(args.ell, args.c);
    const Format fmt = parse_format(args.format);
    const SOptions opts = args.s_options();

    std::optional<SEntry> chain, conv;
    if (args.method != "conv") chain = s_chain_sum(a, c, opts);
    if (args.method != "chain") conv = s_convolution(a, c);

    if (chain && conv && chain->value != conv->value) {
        std::cerr << "method disagreement for S(" << a.str() << ", " << c.str()
                  << "): chain sum " << chain->value.str() << " vs convolution " << conv->value.str()
                  << "\n";
        return 1;
    }

    const SEntry& primary = conv ? *conv : *chain;
    if (fmt == Format::json) {
        Json j = to_json(primary);
        j["method"] = args.method;
        if (chain) {
            j["chains"] = chain->chain_count;
            if (conv) j["methods_agree"] = true;
        }
        std::cout << j.dump() << "\n";
    } else {
        std::vector<std::pair<std::string, std::string>> fields{
            {"ell", std::to_string(args.ell)}, {"a", a.str()}, {"c", c.str()}, {"method", args.method}};
        emit_scalar(fmt, "s", fields, primary.value.str());
    }
    return 0;
}

int run_interval(const Args& args) {
    GroupClass a = GroupClass::parse(args.ell, args.a);
    GroupClass c = GroupClass::parse(args.ell, args.c);
    Interval iv = enumerate_interval(a, c);
    switch (parse_format(args.format)) {
    case Format::text:
        for (const GroupClass& m : iv.members) std::cout << m.str() << "\n";
        break;
    case Format::json: {
        Json members = Json::array();
        for (const GroupClass& m : iv.members) members.push_back(m.str());
        std::cout << Json{{"command", "interval"},
                          {"ell", args.ell},
                          {"a", a.str()},
                          {"c", c.str()},
                          {"members", members}}
                         .dump()
                  << "\n";
        break;
    }
    case Format::csv:
        std::cout << csv_row({"member"});
        for (const GroupClass& m : iv.members) std::cout << csv_row({m.str()});
        break;
    }
    return 0;
}

int run_chains(const Args& args) {
    GroupClass a = GroupClass::parse(args.ell, args.a);
    GroupClass c = GroupClass::parse(args.ell, args.c);
    std::vector<Chain> chains = enumerate_chains(a, c, args.limit);
    switch (parse_format(args.format)) {
    case Format::text:
        for (const Chain& chain : chains) std::cout << chain_text(chain) << "\n";
        break;
    case Format::json: {
        Json list = Json::array();
        for (const Chain& chain : chains) {
            Json links = Json::array();
            for (const GroupClass& x : chain.links) links.push_back(x.str());
            list.push_back(links);
        }
        std::cout << Json{{"command", "chains"},
                          {"ell", args.ell},
                          {"a", a.str()},
                          {"c", c.str()},
                          {"count", chains.size()},
                          {"chains", list}}
                         .dump()
                  << "\n";
        break;
    }
    case Format::csv:
        std::cout << csv_row({"chain"});
        for (const Chain& chain : chains) std::cout << csv_row({chain_text(chain)});
        break;
    }
    return 0;
}

int run_mu(const Args& args) {
    GroupClass c = GroupClass::parse(args.ell, args.c);
    SubgroupLattice lattice = enumerate_subgroups(ConcreteGroup(c), args.oracle_limits());
    const Format fmt = parse_format(args.format);

    Json j{{"command", "mu"}, {"ell", args.ell}, {"group", c.str()}, {"subgroups", lattice.size()}};
    std::string text;
    if (args.a.empty()) {
        SignedCount mu = lattice.mu(lattice.trivial_index(), lattice.top_index());
        j["mu_trivial_top"] = count_str(mu);
        text = mu.str();
    } else {
        GroupClass a = GroupClass::parse(args.ell, args.a);
        const auto& mu_top = lattice.mu_to_top();
        SignedCount sum = 0;
        std::uint64_t matches = 0;
        for (std::size_t i = 0; i < lattice.size(); ++i)
            if (lattice.subgroup(i).iso_type == a) {
                sum += mu_top[i];
                ++matches;
            }
        j["a"] = a.str();
        j["mu_sum"] = count_str(sum);
        j["matching_subgroups"] = matches;
        text = sum.str();
    }
    if (args.dump_lattice) j["lattice"] = lattice_to_json(lattice);

    if (fmt == Format::json) {
        std::cout << j.dump() << "\n";
    } else if (fmt == Format::csv) {
        if (args.dump_lattice) {
            std::cout << csv_row({"index", "size", "class"});
            for (std::size_t i = 0; i < lattice.size(); ++i)
                std::cout << csv_row({std::to_string(i), std::to_string(lattice.subgroup(i).size),
                                      lattice.subgroup(i).iso_type.str()});
        } else {
            std::cout << csv_row({"value"}) << csv_row({text});
        }
    } else {
        std::cout << text << "\n";
        if (args.dump_lattice)
            for (std::size_t i = 0; i < lattice.size(); ++i)
                std::cout << i << " " << lattice.subgroup(i).size << " "
                          << lattice.subgroup(i).iso_type.str() << "\n";
    }
    return 0;
}

int run_amalgam(const Args& args) {
    GroupClass a = GroupClass::parse(args.ell, args.a);
    GroupClass c = GroupClass::parse(args.ell, args.c);
    AmalgamCheck check = amalgam_check(a, c, args.oracle_limits());
    if (parse_format(args.format) == Format::json) {
        std::cout << Json{{"command", "amalgam"},
                          {"ell", args.ell},
                          {"a", a.str()},
                          {"c", c.str()},
                          {"s", count_str(check.s_value)},
                          {"mu_sum", count_str(check.mu_sum)},
                          {"matching_subgroups", check.matching_subgroups},
                          {"equal", check.equal()}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "S = " << check.s_value.str() << ", lattice mu sum = " << check.mu_sum.str()
                  << ", " << (check.equal() ? "equal" : "NOT equal") << "\n";
    }
    if (!check.equal()) {
        std::cerr << "amalgam mismatch for (" << a.str() << ", " << c.str() << ")\n";
        return 1;
    }
    return 0;
}

int run_verify(const Args& args) {
    std::vector<SweepReport> reports;
    if (args.sweep == "structure" || args.sweep == "all")
        reports.push_back(verify_structure(args.ell, args.bound, args.s_options(), !args.no_chain_check));
    if (args.sweep == "amalgam" || args.sweep == "all")
        reports.push_back(amalgam_sweep(args.ell, args.bound));
    if (args.sweep == "mu-dichotomy" || args.sweep == "all")
        reports.push_back(verify_mu_dichotomy(args.ell, args.bound));

    bool clean = true;
    if (parse_format(args.format) == Format::json) {
        Json out = Json::array();
        for (const SweepReport& r : reports) out.push_back(to_json(r));
        std::cout << (out.size() == 1 ? out[0] : out).dump() << "\n";
    }
    for (const SweepReport& r : reports) {
        if (parse_format(args.format) != Format::json) {
            std::cout << "ell=" << r.ell << " bound=" << r.max_order_exponent
                      << " pairs_checked=" << r.pairs_checked
                      << " counterexamples=" << r.counterexamples.size() << "\n";
            for (const Counterexample& ce : r.counterexamples)
                std::cout << "  " << ce.kind << " at (" << ce.a << ", " << ce.c << "): " << ce.detail
                          << "\n";
        }
        clean = clean && r.clean();
    }
    return clean ? 0 : 1;
}

int run_cl_nu(const Args& args) {
    const Format fmt = parse_format(args.format);
    if (!args.a.empty()) {
        GroupClass a = GroupClass::parse(args.ell, args.a);
        NuValue v = nu(a, args.product_terms, args.precision);
        if (fmt == Format::json) {
            std::cout << Json{{"command", "cl-nu"},
                              {"ell", args.ell},
                              {"a", a.str()},
                              {"product_terms", v.product_terms},
                              {"precision_bits", v.precision_bits},
                              {"value", decimal_string(v.value, v.precision_bits)},
                              {"lower_bound", decimal_string(v.lower_bound, v.precision_bits)}}
                             .dump()
                      << "\n";
        } else if (fmt == Format::csv) {
            std::cout << csv_row({"class", "value", "lower_bound"})
                      << csv_row({a.str(), decimal_string(v.value, v.precision_bits),
                                  decimal_string(v.lower_bound, v.precision_bits)});
        } else {
            std::cout << decimal_string(v.value, v.precision_bits) << "\n";
        }
        return 0;
    }
    if (args.order_bound < 0)
        throw std::invalid_argument("cl-nu needs either --a or --order-bound");
    TruncatedMeasure m = TruncatedMeasure::nu_measure(args.ell, static_cast<unsigned>(args.order_bound),
                                                      args.product_terms, args.precision);
    if (fmt == Format::json) {
        Json j = measure_to_json(m);
        j["command"] = "cl-nu";
        std::cout << j.dump() << "\n";
    } else if (fmt == Format::csv) {
        std::cout << csv_row({"class", "weight"});
        for (const auto& [cls, w] : m.weights)
            std::cout << csv_row({cls.str(), decimal_string(w, m.precision_bits)});
    } else {
        for (const auto& [cls, w] : m.weights)
            std::cout << cls.str() << " " << decimal_string(w, m.precision_bits) << "\n";
        std::cout << "total_mass " << decimal_string(total_mass(m), m.precision_bits) << "\n";
    }
    return 0;
}

int run_cl_moment(const Args& args) {
    if (args.order_bound < 0) throw std::invalid_argument("cl-moment needs --order-bound");
    GroupClass a = GroupClass::parse(args.ell, args.a);
    TruncatedMeasure m = TruncatedMeasure::nu_measure(args.ell, static_cast<unsigned>(args.order_bound),
                                                      args.product_terms, args.precision);
    MomentValue v = moment(a, m);
    if (parse_format(args.format) == Format::json) {
        std::cout << Json{{"command", "cl-moment"},
                          {"ell", args.ell},
                          {"a", a.str()},
                          {"order_bound", v.order_bound_exponent},
                          {"product_terms", v.product_truncation},
                          {"precision_bits", args.precision},
                          {"value", decimal_string(v.value, args.precision)}}
                         .dump()
                  << "\n";
    } else {
        emit_scalar(parse_format(args.format), "cl-moment",
                    {{"ell", std::to_string(args.ell)},
                     {"a", a.str()},
                     {"order_bound", std::to_string(v.order_bound_exponent)}},
                    decimal_string(v.value, args.precision));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Args args;
    CLI::App app{"exact arithmetic on classes of finite abelian ell-groups"};
    app.require_subcommand(1);

    auto add_ell = [&](CLI::App* cmd) { cmd->add_option("--ell", args.ell, "odd prime")->required(); };
    auto add_a = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--a", args.a, "class, e.g. [2,1] or []");
        if (required) opt->required();
    };
    auto add_c = [&](CLI::App* cmd) {
        cmd->add_option("--c", args.c, "class, e.g. [2,1] or []")->required();
    };

    CLI::App* sub = app.add_subcommand("sub", "count subgroups of C isomorphic to A");
    CLI::App* inj = app.add_subcommand("inj", "count injections A into C");
    CLI::App* surj = app.add_subcommand("surj", "count surjections C onto A");
    for (CLI::App* cmd : {sub, inj, surj}) {
        add_ell(cmd);
        add_a(cmd);
        add_c(cmd);
        add_format_flag(cmd, args.format);
    }

    CLI::App* aut = app.add_subcommand("aut", "count automorphisms of A");
    add_ell(aut);
    add_a(aut);
    add_format_flag(aut, args.format);

    CLI::App* s = app.add_subcommand("s", "evaluate S(A, C)");
    add_ell(s);
    add_a(s);
    add_c(s);
    add_format_flag(s, args.format);
    s->add_option("--method", args.method, "evaluation method")
        ->check(CLI::IsMember({"chain", "conv", "both"}))
        ->capture_default_str();
    s->add_option("--max-interval", args.max_interval,
                  "open-interval guard for the chain sum (env ELLPOS_MAX_INTERVAL)");

    CLI::App* interval = app.add_subcommand("interval", "list the classes between A and C");
    add_ell(interval);
    add_a(interval);
    add_c(interval);
    add_format_flag(interval, args.format);

    CLI::App* chains = app.add_subcommand("chains", "list the A-chains with greatest element C");
    add_ell(chains);
    add_a(chains);
    add_c(chains);
    add_format_flag(chains, args.format);
    chains->add_option("--limit", args.limit, "refuse to materialise more chains than this")
        ->capture_default_str();

    CLI::App* mu = app.add_subcommand("mu", "Moebius function of the subgroup lattice of C");
    add_ell(mu);
    add_c(mu);
    add_a(mu, false);
    add_format_flag(mu, args.format);
    mu->add_option("--max-order", args.max_order, "largest group order to materialise")
        ->capture_default_str();
    mu->add_flag("--dump-lattice", args.dump_lattice, "include the full lattice");

    CLI::App* amalgam = app.add_subcommand("amalgam", "compare S(A, C) with the lattice mu sum");
    add_ell(amalgam);
    add_a(amalgam);
    add_c(amalgam);
    add_format_flag(amalgam, args.format);
    amalgam->add_option("--max-order", args.max_order, "largest group order to materialise")
        ->capture_default_str();

    CLI::App* verify = app.add_subcommand("verify", "sweep structural identities exhaustively");
    add_ell(verify);
    verify->add_option("--max-order-exp", args.bound, "check classes of order up to ell^N")
        ->required();
    add_format_flag(verify, args.format);
    verify->add_option("--sweep", args.sweep, "which sweep to run")
        ->check(CLI::IsMember({"structure", "amalgam", "mu-dichotomy", "all"}))
        ->capture_default_str();
    verify->add_flag("--no-chain-check", args.no_chain_check, "skip chain-sum crosschecks");
    verify->add_option("--max-interval", args.max_interval,
                       "open-interval guard for chain crosschecks (env ELLPOS_MAX_INTERVAL)");

    CLI::App* cl_nu = app.add_subcommand("cl-nu", "truncated measure weight(s)");
    add_ell(cl_nu);
    add_a(cl_nu, false);
    cl_nu->add_option("--order-bound", args.order_bound, "emit weights for all classes up to ell^M");
    cl_nu->add_option("--product-terms", args.product_terms, "Euler product truncation")
        ->capture_default_str();
    cl_nu->add_option("--precision", args.precision, "bits of rendered precision")
        ->capture_default_str();
    add_format_flag(cl_nu, args.format);

    CLI::App* cl_moment = app.add_subcommand("cl-moment", "moment of the truncated measure");
    add_ell(cl_moment);
    add_a(cl_moment);
    cl_moment->add_option("--order-bound", args.order_bound, "sum over classes up to ell^M")
        ->required();
    cl_moment->add_option("--product-terms", args.product_terms, "Euler product truncation")
        ->capture_default_str();
    cl_moment->add_option("--precision", args.precision, "bits of rendered precision")
        ->capture_default_str();
    add_format_flag(cl_moment, args.format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    // Running both methods is a cross-check; its natural output is the
    // agreement document, so default to JSON unless a format was requested.
    if (s->parsed() && args.method == "both" && s->get_option("--format")->count() == 0)
        args.format = "json";
    for (CLI::App* cmd : {s, verify})
        if (cmd->parsed() && cmd->get_option("--max-interval")->count() > 0)
            args.max_interval_given = true;

    try {
        if (sub->parsed()) return run_pair_count(args, "sub");
        if (inj->parsed()) return run_pair_count(args, "inj");
        if (surj->parsed()) return run_pair_count(args, "surj");
        if (aut->parsed()) return run_aut(args);
        if (s->parsed()) return run_s(args);
        if (interval->parsed()) return run_interval(args);
        if (chains->parsed()) return run_chains(args);
        if (mu->parsed()) return run_mu(args);
        if (amalgam->parsed()) return run_amalgam(args);
        if (verify->parsed()) return run_verify(args);
        if (cl_nu->parsed()) return run_cl_nu(args);
        if (cl_moment->parsed()) return run_cl_moment(args);
    } catch (const resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
