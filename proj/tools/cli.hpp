#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aifv/aifv.hpp"

namespace aifv::cli {

enum ExitCode : int { ok = 0, domain_failure = 1, usage_failure = 2 };

/// Unreadable, malformed or structurally broken input.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Streams {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

inline std::string read_input(const std::string& path, std::istream& in) {
    if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline void write_output(const std::string& path, const std::string& data, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << data;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !f.write(data.data(), static_cast<std::streamsize>(data.size()))) throw InputError("cannot write '" + path + "'");
}

template <class Parse>
auto load(const std::string& path, std::istream& in, Parse parse) {
    std::string text = read_input(path, in);
    try {
        return parse(text);
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline std::optional<std::size_t> env_max_delay() {
    const char* v = std::getenv("AIFV_MAX_DELAY");
    if (!v || !*v) return std::nullopt;
    try {
        std::size_t used = 0;
        std::size_t n = std::stoul(v, &used);
        if (v[used] == '\0') return n;
    } catch (const std::exception&) {
    }
    throw InputError(std::string("AIFV_MAX_DELAY is not a non-negative integer: ") + v);
}

inline TreeSetDocument load_tree_set(const std::string& path, std::istream& in) {
    auto doc = load(path, in, [](const std::string& t) { return parse_tree_set(t); });
    if (auto cap = env_max_delay(); cap && !check_delay_budget(doc.set, *cap))
        throw Error(Errc::member_too_long, "a mode member is longer than AIFV_MAX_DELAY=" + std::to_string(*cap));
    return doc;
}

inline const char* clause_name(RuleClause c) { return c == RuleClause::overlap ? "overlap" : "missing-prefix"; }

inline std::string describe(const Violation& v, const Alphabet& alphabet) {
    std::ostringstream os;
    os << "tree " << v.tree << ": ";
    if (v.clause == RuleClause::overlap)
        os << "expanded codewords '" << v.words[0].to_string() << "' (" << alphabet.name(v.symbol) << ") and '"
           << v.words[1].to_string() << "' (" << alphabet.name(*v.other) << ") are comparable";
    else
        os << "expanded codeword '" << v.words[0].to_string() << "' (" << alphabet.name(v.symbol)
           << ") has no prefix in the mode";
    return os.str();
}

inline int run_validate(Streams io, const std::string& path, const std::string& method_name,
                        std::optional<std::size_t> budget, bool as_json) {
    auto doc = load_tree_set(path, io.in);
    ValidationMethod method = method_name == "interval" ? ValidationMethod::interval
                              : method_name == "both"   ? ValidationMethod::both
                                                        : ValidationMethod::direct;
    auto report = validate(doc.set, method);
    bool budget_ok = !budget || check_delay_budget(doc.set, *budget);
    std::optional<std::size_t> delay;
    if (report.valid()) delay = decoding_delay(doc.set);
    if (as_json) {
        nlohmann::ordered_json j;
        j["valid"] = report.valid() && budget_ok;
        j["method"] = method_name;
        j["violations"] = nlohmann::ordered_json::array();
        for (const auto& v : report.violations) {
            nlohmann::ordered_json e;
            e["kind"] = clause_name(v.clause);
            e["tree"] = v.tree;
            e["symbol"] = doc.alphabet.name(v.symbol);
            if (v.other) e["other"] = doc.alphabet.name(*v.other);
            e["words"] = nlohmann::ordered_json::array();
            for (const auto& w : v.words) e["words"].push_back(w.to_string());
            j["violations"].push_back(e);
        }
        if (delay) j["decoding_delay"] = *delay;
        if (budget) j["delay_budget"] = {{"bits", *budget}, {"ok", budget_ok}};
        io.out << j.dump(2) << "\n";
    } else {
        for (const auto& v : report.violations) io.out << describe(v, doc.alphabet) << "\n";
        if (budget && !budget_ok) io.out << "a mode member is longer than the " << *budget << "-bit budget\n";
        if (report.valid() && budget_ok)
            io.out << "valid (" << doc.set.size() << " trees, decoding delay " << *delay << " bits)\n";
        else
            io.out << "invalid\n";
    }
    return report.valid() && budget_ok ? ok : domain_failure;
}

inline int run_encode(Streams io, const std::string& path, const std::string& input, const std::string& output,
                      const std::string& format) {
    auto doc = load_tree_set(path, io.in);
    auto xs = load(input, io.in, [&](const std::string& t) { return parse_symbols(t, doc.alphabet); });
    auto result = Codec(doc.set).encode(xs);
    if (format == "binary")
        write_output(output, write_bitstream({xs.size(), result.bits}), io.out);
    else
        write_output(output, result.bits.to_string() + "\n", io.out);
    return ok;
}

inline int run_decode(Streams io, const std::string& path, const std::string& input, const std::string& output,
                      const std::string& format, std::optional<std::size_t> length) {
    auto doc = load_tree_set(path, io.in);
    std::string raw = read_input(input, io.in);
    BitString bits;
    std::size_t count = 0;
    if (format == "binary") {
        Bitstream stream = [&] {
            try {
                return read_bitstream(raw);
            } catch (const Error& e) {
                throw InputError(input + ": " + e.what());
            }
        }();
        bits = stream.bits;
        count = length ? *length : stream.symbol_count;
    } else {
        if (!length) throw InputError("--length is required for ascii input");
        std::string digits;
        for (char c : raw)
            if (!std::isspace(static_cast<unsigned char>(c))) digits.push_back(c);
        try {
            bits = BitString(digits);
        } catch (const Error& e) {
            throw InputError(input + ": " + e.what());
        }
        count = *length;
    }
    auto trace = Codec(doc.set).decode(bits, count);
    write_output(output, format_symbols(trace.symbols, doc.alphabet) + "\n", io.out);
    return ok;
}

inline int run_reduce(Streams io, const std::string& path, const std::string& output) {
    auto doc = load_tree_set(path, io.in);
    TreeSetDocument reduced{doc.alphabet, to_basic(doc.set), doc.tree_names};
    write_output(output, serialize_tree_set(reduced), io.out);
    return ok;
}

inline int run_analyze(Streams io, const std::string& path, const std::string& dist_path,
                       std::optional<std::size_t> mc, std::uint64_t seed, bool as_json) {
    auto doc = load_tree_set(path, io.in);
    auto dist = load(dist_path, io.in, [&](const std::string& t) { return parse_distribution(t, doc.alphabet); });
    std::size_t delay = decoding_delay(doc.set);
    double length = expected_code_length(doc.set, dist);
    double h = entropy(dist);
    auto pi = stationary(transition_matrix(doc.set, dist));
    std::optional<MonteCarloResult> sim;
    if (mc) sim = monte_carlo(doc.set, dist, *mc, seed);
    if (as_json) {
        nlohmann::ordered_json j;
        j["decoding_delay"] = delay;
        j["expected_length"] = length;
        j["entropy"] = h;
        j["stationary"] = pi;
        if (sim) j["monte_carlo"] = {{"symbols", sim->symbols}, {"seed", seed}, {"rate", sim->rate},
                                     {"standard_error", sim->standard_error}};
        io.out << j.dump(2) << "\n";
        return ok;
    }
    io.out << std::setprecision(10);
    io.out << "decoding delay:  " << delay << " bits\n";
    io.out << "expected length: " << length << " bits/symbol\n";
    io.out << "entropy:         " << h << " bits/symbol\n";
    io.out << "stationary:     ";
    for (double p : pi) io.out << ' ' << p;
    io.out << "\n";
    if (sim)
        io.out << "monte carlo:     " << sim->rate << " bits/symbol (" << sim->symbols << " symbols, seed " << seed
               << ", standard error " << sim->standard_error << ")\n";
    return ok;
}

inline int run_import(Streams io, const std::string& path, std::string kind, std::optional<std::size_t> m,
                      const std::string& output) {
    auto doc = load(path, io.in, [](const std::string& t) { return parse_conventional(t); });
    if (kind.empty()) kind = doc.kind.value_or("");
    if (!m) m = doc.m;
    CodeTreeSet set = [&] {
        if (kind == "aifv2") return import_aifv2(doc.trees);
        if (kind == "aifvm") {
            if (!m) throw InputError("AIFV-m import needs m (flag --m or document field \"m\")");
            return import_aifvm(doc.trees, *m);
        }
        throw InputError("unknown import kind '" + kind + "' (expected aifv2 or aifvm)");
    }();
    write_output(output, serialize_tree_set(make_document(std::move(set), doc.alphabet)), io.out);
    return ok;
}

inline int run_convert_vv(Streams io, const std::string& path, const std::string& output) {
    auto doc = load(path, io.in, [](const std::string& t) { return parse_vv_table(t); });
    write_output(output, serialize_tree_set(make_document(vv_to_tree_set(doc.table), doc.alphabet)), io.out);
    return ok;
}

inline int run_delay(Streams io, const std::string& path) {
    auto doc = load_tree_set(path, io.in);
    io.out << decoding_delay(doc.set) << "\n";
    return ok;
}

/// Runs one command line; never throws.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Streams io{in, out, err};
    CLI::App app{"Encode, decode, validate and analyse code-tree-set AIFV codes", "aifv"};
    app.require_subcommand(1);
    int status = ok;

    std::string path, input = "-", output = "-", method = "direct", format = "ascii", dist, kind;
    std::optional<std::size_t> budget, length, mc, m;
    std::uint64_t seed = 1;
    bool as_json = false;

    auto* validate_cmd = app.add_subcommand("validate", "check the decodability constraints of a code-tree set");
    validate_cmd->add_option("trees", path, "code-tree-set document")->required();
    validate_cmd->add_option("--method", method, "direct, interval or both")
        ->check(CLI::IsMember({"direct", "interval", "both"}));
    validate_cmd->add_option("--delay", budget, "also require every mode member to fit in N bits");
    validate_cmd->add_flag("--json", as_json, "machine-readable report");
    validate_cmd->callback([&] { status = run_validate(io, path, method, budget, as_json); });

    auto* encode_cmd = app.add_subcommand("encode", "encode whitespace-separated symbols");
    encode_cmd->add_option("trees", path, "code-tree-set document")->required();
    encode_cmd->add_option("input", input, "symbol file ('-' for stdin)");
    encode_cmd->add_option("-o,--output", output, "output file ('-' for stdout)");
    encode_cmd->add_option("--format", format, "ascii or binary")->check(CLI::IsMember({"ascii", "binary"}));
    encode_cmd->callback([&] { status = run_encode(io, path, input, output, format); });

    auto* decode_cmd = app.add_subcommand("decode", "decode a bit sequence");
    decode_cmd->add_option("trees", path, "code-tree-set document")->required();
    decode_cmd->add_option("input", input, "encoded file ('-' for stdin)");
    decode_cmd->add_option("-o,--output", output, "output file ('-' for stdout)");
    decode_cmd->add_option("--format", format, "ascii or binary")->check(CLI::IsMember({"ascii", "binary"}));
    decode_cmd->add_option("-l,--length", length, "number of symbols (required for ascii)");
    decode_cmd->callback([&] { status = run_decode(io, path, input, output, format, length); });

    auto* reduce_cmd = app.add_subcommand("reduce", "rewrite every mode into its basic form");
    reduce_cmd->add_option("trees", path, "code-tree-set document")->required();
    reduce_cmd->add_option("-o,--output", output, "output file ('-' for stdout)");
    reduce_cmd->callback([&] { status = run_reduce(io, path, output); });

    auto* analyze_cmd = app.add_subcommand("analyze", "expected length, entropy and tree occupancy");
    analyze_cmd->add_option("trees", path, "code-tree-set document")->required();
    analyze_cmd->add_option("distribution", dist, "distribution document")->required();
    analyze_cmd->add_option("--mc", mc, "also measure the rate on N random symbols");
    analyze_cmd->add_option("--seed", seed, "seed for --mc");
    analyze_cmd->add_flag("--json", as_json, "machine-readable report");
    analyze_cmd->callback([&] { status = run_analyze(io, path, dist, mc, seed, as_json); });

    auto* import_cmd = app.add_subcommand("import", "convert conventional AIFV trees into a code-tree set");
    import_cmd->add_option("trees", path, "conventional tree document")->required();
    import_cmd->add_option("--kind", kind, "aifv2 or aifvm (default: from the document)")
        ->check(CLI::IsMember({"aifv2", "aifvm"}));
    import_cmd->add_option("--m", m, "delay parameter of an AIFV-m code");
    import_cmd->add_option("-o,--output", output, "output file ('-' for stdout)");
    import_cmd->callback([&] { status = run_import(io, path, kind, m, output); });

    auto* vv_cmd = app.add_subcommand("convert-vv", "build a code-tree set from a VV code table");
    vv_cmd->add_option("table", path, "VV table document")->required();
    vv_cmd->add_option("-o,--output", output, "output file ('-' for stdout)");
    vv_cmd->callback([&] { status = run_convert_vv(io, path, output); });

    auto* delay_cmd = app.add_subcommand("delay", "print the decoding delay in bits");
    delay_cmd->add_option("trees", path, "code-tree-set document")->required();
    delay_cmd->callback([&] { status = run_delay(io, path); });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "aifv: " << e.what() << "\n";
        return usage_failure;
    } catch (const InputError& e) {
        err << "aifv: " << e.what() << "\n";
        return usage_failure;
    } catch (const Error& e) {
        err << "aifv: " << e.what() << "\n";
        return domain_failure;
    } catch (const std::exception& e) {
        err << "aifv: " << e.what() << "\n";
        return usage_failure;
    }
    return status;
}

}  // namespace aifv::cli
