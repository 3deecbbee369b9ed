#include "depthlab/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "depthlab/analyzer.hpp"
#include "depthlab/cache.hpp"
#include "depthlab/errors.hpp"
#include "depthlab/report.hpp"

namespace depthlab {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_atomic(const std::string& path, const std::string& content) {
    fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        out << content;
        if (!out) throw ConfigError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw ConfigError("rename failed for " + path + ": " + ec.message());
    }
}

// --input accepts either a generator grammar string or a path to an ASCII 0/1
// file (newlines ignored).
PrefixSource parse_source(const std::string& text) {
    try {
        return PrefixSource::from_spec(SequenceSpec::parse(text));
    } catch (const ConfigError&) {
    }
    if (!fs::exists(text))
        throw ConfigError("'" + text + "' is neither a sequence grammar nor a readable file");
    std::string data = read_file(text);
    Bits bits;
    bits.reserve(data.size());
    for (char c : data) {
        if (c == '\n' || c == '\r') continue;
        if (c != '0' && c != '1')
            throw ConfigError("file " + text + " contains a byte other than '0'/'1'");
        bits.push_back(c);
    }
    return PrefixSource::from_raw(std::move(bits), text);
}

std::vector<std::uint64_t> parse_schedule(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("bad schedule entry '" + item + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void enforce_fst_ceiling(unsigned states, unsigned maxout) {
    if (states < 1 || states > kCliMaxStates)
        throw ConfigError("--max-states/--states must be in 1.." + std::to_string(kCliMaxStates));
    if (maxout < 1 || maxout > kCliMaxOut)
        throw ConfigError("--maxout must be in 1.." + std::to_string(kCliMaxOut));
}

StrongSide parse_strong_side(const std::string& text) {
    if (text == "same-family") return StrongSide::SameFamily;
    if (text == "full-family") return StrongSide::FullFamily;
    throw ConfigError("--strong-side must be same-family or full-family");
}

fs::path resolve_cache(const std::string& flag) {
    return flag.empty() ? cache_dir() : fs::path(flag);
}

std::string bits_display(const Bits& b) { return b.empty() ? "-" : b; }

// Options gathered from all subcommands; each handler reads its own subset.
struct Opts {
    std::string spec, input, machine, out, cache, registry;
    std::string schedule = "256,512,1024,2048,4096";
    std::string strong_side = "same-family";
    std::string bound;
    std::uint64_t length = 0;
    unsigned states = 1, maxout = 1, max_order = 0;
    double alpha = 0.0;
    bool header = false;
};

int cmd_generate(const Opts& o, std::ostream& out) {
    SequenceSpec spec = SequenceSpec::parse(o.spec);
    Bits bits = generate(spec, o.length);
    write_atomic(o.out, bits + "\n");
    out << "wrote " << o.length << " bits to " << o.out << "\n";
    return 0;
}

int cmd_fst_run(const Opts& o, std::ostream& out) {
    Transducer m = parse_fst(read_file(o.machine));
    PrefixSource src = parse_source(o.input);
    Bits x;
    if (o.length)
        x = src.prefix(o.length);
    else if (src.spec)
        throw ConfigError("--length is required for generated inputs");
    else
        x = src.raw;
    RunResult r = run(m, x);
    if (!o.out.empty()) write_atomic(o.out, r.output + "\n");
    out << "output: " << bits_display(r.output) << "\n";
    out << "final_state: " << r.final_state << "\n";
    return 0;
}

int cmd_fst_check_il(const Opts& o, std::ostream& out) {
    Transducer m = parse_fst(read_file(o.machine));
    IlVerdict v = check_il(m);
    out << "lossless: " << (v.lossless ? "true" : "false") << "\n";
    if (!v.lossless && v.witness)
        out << "witness: " << bits_display(v.witness->first) << " / "
            << bits_display(v.witness->second) << "\n";
    return 0;
}

int cmd_fst_enumerate(const Opts& o, std::ostream& out) {
    enforce_fst_ceiling(o.states, o.maxout);
    std::vector<Transducer> machines =
        cached_enumeration(o.states, o.maxout, resolve_cache(o.cache));
    out << "count: " << machines.size() << "\n";
    if (!o.out.empty()) {
        std::string payload;
        for (const Transducer& m : machines) payload += serialize_fst(m) + "\n";
        write_atomic(o.out, payload);
    }
    return 0;
}

HierarchySpec fst_hierarchy(const Opts& o) {
    HierarchySpec h;
    h.family = HierarchyFamily::Fst;
    h.strong_side = parse_strong_side(o.strong_side);
    h.max_level = o.states;
    h.fst_l_max = o.maxout;
    h.fst_header = o.header;
    return h;
}

int cmd_analyze_fs(const Opts& o, std::ostream& out) {
    enforce_fst_ceiling(o.states, o.maxout);
    if (o.alpha <= 0.0 || o.alpha > 1.0) throw ConfigError("--alpha must be in (0,1]");
    PrefixSource src = parse_source(o.input);
    std::vector<Transducer> family =
        cached_enumeration(o.states, o.maxout, resolve_cache(o.cache));
    DepthProfile profile = depth_profile(src, fst_hierarchy(o), BoundSpec::linear(o.alpha),
                                         parse_schedule(o.schedule), &family);
    write_atomic(o.out, render_profile_csv(profile));
    out << "wrote " << profile.rows.size() << " rows to " << o.out << "\n";
    return 0;
}

int cmd_analyze_predictor(const Opts& o, std::ostream& out) {
    HierarchySpec h;
    h.family = HierarchyFamily::Predictor;
    h.strong_side = parse_strong_side(o.strong_side);
    h.max_level = o.max_order;
    DepthProfile profile = depth_profile(parse_source(o.input), h, BoundSpec::parse(o.bound),
                                         parse_schedule(o.schedule));
    write_atomic(o.out, render_profile_csv(profile));
    out << "wrote " << profile.rows.size() << " rows to " << o.out << "\n";
    return 0;
}

int cmd_analyze_bennett(const Opts& o, std::ostream& out) {
    RegistrySpec reg = RegistrySpec::parse(o.registry);
    PrefixSource src = parse_source(o.input);
    std::vector<BennettRow> rows = bennett_toy_profile(src, reg, parse_schedule(o.schedule));
    write_atomic(o.out, render_bennett_csv(src.label, reg, rows));
    out << "wrote " << rows.size() << " rows to " << o.out << "\n";
    return 0;
}

int cmd_slow_growth(const Opts& o, std::ostream& out) {
    enforce_fst_ceiling(o.states, o.maxout);
    if (o.alpha <= 0.0 || o.alpha > 1.0) throw ConfigError("--alpha must be in (0,1]");
    Transducer m = parse_fst(read_file(o.machine));
    PrefixSource src = parse_source(o.input);
    std::vector<Transducer> family =
        cached_enumeration(o.states, o.maxout, resolve_cache(o.cache));
    auto [src_profile, dst_profile] =
        slow_growth_experiment(src, m, fst_hierarchy(o), BoundSpec::linear(o.alpha),
                               parse_schedule(o.schedule), &family);
    // one report per side: <stem>.source.csv and <stem>.transformed.csv
    std::string stem = o.out;
    if (stem.size() > 4 && stem.rfind(".csv") == stem.size() - 4)
        stem.resize(stem.size() - 4);
    write_atomic(stem + ".source.csv", render_profile_csv(src_profile));
    write_atomic(stem + ".transformed.csv", render_profile_csv(dst_profile));
    out << "wrote " << stem << ".source.csv and " << stem << ".transformed.csv\n";
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Opts o;
    CLI::App app{"observer-relative depth laboratory"};
    app.require_subcommand(1);

    CLI::App* generate = app.add_subcommand("generate", "write a generated sequence prefix");
    generate->add_option("--spec", o.spec, "sequence grammar")->required();
    generate->add_option("--length", o.length, "prefix length")->required();
    generate->add_option("--out", o.out, "output file")->required();

    CLI::App* fst = app.add_subcommand("fst", "transducer utilities");
    fst->require_subcommand(1);
    CLI::App* fst_run = fst->add_subcommand("run", "run a machine on an input");
    fst_run->add_option("--machine", o.machine)->required();
    fst_run->add_option("--input", o.input)->required();
    fst_run->add_option("--length", o.length);
    fst_run->add_option("--out", o.out);
    CLI::App* fst_check = fst->add_subcommand("check-il", "decide information-losslessness");
    fst_check->add_option("--machine", o.machine)->required();
    CLI::App* fst_enum = fst->add_subcommand("enumerate", "enumerate the IL family");
    fst_enum->add_option("--states", o.states)->required();
    fst_enum->add_option("--maxout", o.maxout);
    fst_enum->add_option("--cache", o.cache);
    fst_enum->add_option("--out", o.out);

    CLI::App* analyze = app.add_subcommand("analyze", "depth-gap profiles");
    analyze->require_subcommand(1);
    CLI::App* an_fs = analyze->add_subcommand("fs", "finite-state hierarchy profile");
    an_fs->add_option("--input", o.input)->required();
    an_fs->add_option("--max-states", o.states)->required();
    an_fs->add_option("--maxout", o.maxout);
    an_fs->add_option("--alpha", o.alpha)->required();
    an_fs->add_flag("--header", o.header, "charge the machine table to the code length");
    an_fs->add_option("--schedule", o.schedule);
    an_fs->add_option("--strong-side", o.strong_side);
    an_fs->add_option("--cache", o.cache);
    an_fs->add_option("--out", o.out)->required();
    CLI::App* an_pred = analyze->add_subcommand("predictor", "martingale hierarchy profile");
    an_pred->add_option("--input", o.input)->required();
    an_pred->add_option("--max-order", o.max_order)->required();
    an_pred->add_option("--bound", o.bound)->required();
    an_pred->add_option("--schedule", o.schedule);
    an_pred->add_option("--strong-side", o.strong_side);
    an_pred->add_option("--out", o.out)->required();
    CLI::App* an_ben = analyze->add_subcommand("bennett", "registry budget gaps");
    an_ben->add_option("--input", o.input)->required();
    an_ben->add_option("--registry", o.registry)->required();
    an_ben->add_option("--schedule", o.schedule);
    an_ben->add_option("--out", o.out)->required();

    CLI::App* experiment = app.add_subcommand("experiment", "curated experiments");
    experiment->require_subcommand(1);
    CLI::App* slow = experiment->add_subcommand("slow-growth", "profile a source and its image");
    slow->add_option("--input", o.input)->required();
    slow->add_option("--machine", o.machine)->required();
    slow->add_option("--max-states", o.states)->required();
    slow->add_option("--maxout", o.maxout);
    slow->add_option("--alpha", o.alpha)->required();
    slow->add_option("--schedule", o.schedule);
    slow->add_option("--strong-side", o.strong_side);
    slow->add_option("--cache", o.cache);
    slow->add_option("--out", o.out)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (generate->parsed()) return cmd_generate(o, out);
        if (fst_run->parsed()) return cmd_fst_run(o, out);
        if (fst_check->parsed()) return cmd_fst_check_il(o, out);
        if (fst_enum->parsed()) return cmd_fst_enumerate(o, out);
        if (an_fs->parsed()) return cmd_analyze_fs(o, out);
        if (an_pred->parsed()) return cmd_analyze_predictor(o, out);
        if (an_ben->parsed()) return cmd_analyze_bennett(o, out);
        if (slow->parsed()) return cmd_slow_growth(o, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace depthlab
