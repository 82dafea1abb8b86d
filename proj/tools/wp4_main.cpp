#include <chrono>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wp4/bench.hpp"
#include "wp4/io.hpp"
#include "wp4/pursuit.hpp"
#include "wp4/transform.hpp"
#include "wp4/window.hpp"

namespace {

constexpr const char* kVersion = "wp4 0.1.0";

constexpr int kExitBadArgs = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

bool ends_with(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

wp4::TimeSignal load_signal(const std::string& path) {
    if (ends_with(path, ".wav")) return wp4::read_wav(path);
    return wp4::read_raw_f64(path);
}

void store_signal(const std::string& path, const wp4::TimeSignal& t) {
    if (ends_with(path, ".wav"))
        wp4::write_wav(path, t);
    else
        wp4::write_raw_f64(path, t);
}

wp4::SplineWindow default_window(const wp4::FreqGrid& grid) {
    const double c = std::sqrt(grid.start_freq * grid.top());
    wp4::SplineWindow f;
    f.nodes = {{c / 2.0, 0.0}, {c, 1.0}, {3.0 * c / 2.0, 0.0}};
    return f;
}

struct DecomposeOpts {
    std::string input, output, window_path, method = "mp";
    std::size_t atoms = 16;
    int order = 9, depth = 0, low_cut = 4;
};

struct VocoderOpts {
    std::string input, output, window_path;
    int stretch = 2;
    std::size_t atoms = 16;
    int order = 9, depth = 0, low_cut = 4;
};

struct BenchOpts {
    std::string output;
    std::string sizes = "4096,8192,16384,32768,65536,131072";
    std::size_t dense_max = 8192;
    int searches = 3;
};

std::vector<std::string> g_argv;

void write_manifest(const std::string& command, const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs,
                    const std::vector<std::pair<std::string, double>>& timings,
                    const std::string& path) {
    wp4::RunManifest m;
    m.command = command;
    m.version = kVersion;
    for (std::size_t i = 0; i < g_argv.size(); ++i)
        m.parameters.emplace_back("arg" + std::to_string(i), g_argv[i]);
    m.inputs = inputs;
    m.outputs = outputs;
    m.timings_ms = timings;
    wp4::write_text_file(path, wp4::manifest_to_json(m));
}

int cmd_decompose(const DecomposeOpts& o) {
    Timer total;
    wp4::TimeSignal t;
    wp4::SplineWindow window;
    try {
        t = load_signal(o.input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    try {
        wp4::FreqConversion fc = wp4::to_frequency(t, static_cast<std::size_t>(o.low_cut));
        try {
            window = o.window_path.empty() ? default_window(fc.signal.grid())
                                           : wp4::read_window_json(o.window_path);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitIo;
        }
        wp4::SearchConfig cfg;
        cfg.fourier_order = o.order;
        cfg.max_depth = o.depth;
        Timer pursuit;
        const wp4::Decomposition d =
            o.method == "omp" ? wp4::omp(fc.signal, window, o.atoms, cfg)
                              : wp4::mp(fc.signal, window, o.atoms, cfg);
        const double pursuit_ms = pursuit.ms();

        wp4::DecompositionFile out;
        out.decomposition = d;
        out.grid = fc.signal.grid();
        out.sample_rate = fc.sample_rate;
        out.nfft = fc.nfft;
        out.n_samples = fc.n_samples;
        out.low_band = fc.signal.low_band;
        wp4::write_text_file(o.output, wp4::decomposition_to_jsonl(out));
        write_manifest("decompose", {o.input}, {o.output},
                       {{"pursuit", pursuit_ms}, {"total", total.ms()}},
                       o.output + ".manifest.json");
        std::cout << "wrote " << d.atoms.size() << " atoms to " << o.output << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int cmd_reconstruct(const std::string& input, const std::string& output) {
    Timer total;
    wp4::DecompositionFile d;
    try {
        d = wp4::decomposition_from_jsonl(wp4::read_text_file(input));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    try {
        wp4::FrequencySignal s =
            wp4::synthesize(d.decomposition.atoms, d.decomposition.window, d.grid);
        s.low_band = d.low_band;
        const wp4::TimeSignal t = wp4::to_time(s, d.sample_rate, d.n_samples);
        store_signal(output, t);
        write_manifest("reconstruct", {input}, {output}, {{"total", total.ms()}},
                       output + ".manifest.json");
        std::cout << "wrote " << t.samples.size() << " samples to " << output << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int cmd_vocoder(const VocoderOpts& o) {
    Timer total;
    wp4::TimeSignal t;
    try {
        t = load_signal(o.input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    try {
        wp4::FreqConversion fc = wp4::to_frequency(t, static_cast<std::size_t>(o.low_cut));
        wp4::SplineWindow window;
        try {
            window = o.window_path.empty() ? default_window(fc.signal.grid())
                                           : wp4::read_window_json(o.window_path);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitIo;
        }
        wp4::SearchConfig cfg;
        cfg.fourier_order = o.order;
        cfg.max_depth = o.depth;
        wp4::VocoderConfig vcfg;
        vcfg.stretch = o.stretch;
        vcfg.n_atoms = o.atoms;
        const wp4::FrequencySignal out = wp4::vocoder_stretch(fc.signal, window, vcfg, cfg);
        const wp4::TimeSignal stretched =
            wp4::to_time(out, fc.sample_rate, fc.n_samples * static_cast<std::size_t>(o.stretch));
        store_signal(o.output, stretched);
        write_manifest("vocoder", {o.input}, {o.output}, {{"total", total.ms()}},
                       o.output + ".manifest.json");
        std::cout << "wrote " << stretched.samples.size() << " samples to " << o.output << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int cmd_oracle_compare(const DecomposeOpts& o) {
    Timer total;
    wp4::TimeSignal t;
    try {
        t = load_signal(o.input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    try {
        wp4::FreqConversion fc = wp4::to_frequency(t, static_cast<std::size_t>(o.low_cut));
        const wp4::SplineWindow window =
            o.window_path.empty() ? wp4::normalized_signal(default_window(fc.signal.grid()))
                                  : wp4::normalized_signal(wp4::read_window_json(o.window_path));
        wp4::SearchConfig cfg;
        cfg.fourier_order = o.order;
        cfg.max_depth = o.depth;

        const wp4::FrequencySignal padded = wp4::pad_for_search(window, fc.signal);
        const wp4::SplineSequence F0 = wp4::tensor_init(window, padded);
        const wp4::SearchResult found = wp4::search_coefficient(F0, cfg);
        const wp4::Atom atom = wp4::refine(padded, window, found, cfg.refine_radius);
        const std::vector<wp4::cplx> v = wp4::atom_sample(window, atom.point, padded.grid());
        const double wp4_mod = std::abs(atom.coeff) * wp4::vector_norm(v, padded.spacing);

        const wp4::SlopeBand band = wp4::initial_band(window, padded.grid());
        const double center = window.center();
        const std::size_t n = padded.samples.size();
        const std::vector<double> scales =
            wp4::linfreq_scale_grid(center / band.hi, center / band.lo, n, center);
        const wp4::DenseCwt dense = wp4::dense_cwt(padded, window, scales, n);
        const auto [dense_point, dense_mod] = wp4::dense_argmax(dense);

        std::cout << "wp4_coeff_modulus " << wp4_mod << "\n"
                  << "dense_argmax_modulus " << dense_mod << "\n"
                  << "ratio " << (dense_mod > 0 ? wp4_mod / dense_mod : 0.0) << "\n"
                  << "wp4_point g1=" << atom.point.g1 << " g2=" << atom.point.g2 << "\n"
                  << "dense_point g1=" << dense_point.g1 << " g2=" << dense_point.g2 << "\n";
        if (!o.output.empty()) {
            std::ostringstream report;
            report << "{\"wp4_coeff_modulus\":" << wp4_mod
                   << ",\"dense_argmax_modulus\":" << dense_mod
                   << ",\"ratio\":" << (dense_mod > 0 ? wp4_mod / dense_mod : 0.0) << "}\n";
            wp4::write_text_file(o.output, report.str());
            write_manifest("oracle-compare", {o.input}, {o.output}, {{"total", total.ms()}},
                           o.output + ".manifest.json");
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int cmd_bench(const BenchOpts& o) {
    try {
        wp4::BenchOptions opt;
        std::stringstream ss(o.sizes);
        for (std::string tok; std::getline(ss, tok, ',');)
            if (!tok.empty()) opt.sizes.push_back(std::stoul(tok));
        if (opt.sizes.empty()) {
            std::cerr << "error: no sizes\n";
            return kExitBadArgs;
        }
        opt.dense_max_n = o.dense_max;
        opt.searches_per_size = o.searches;
        const std::vector<wp4::BenchRow> rows = wp4::run_bench(opt);
        const std::string csv = wp4::bench_csv(rows);
        if (o.output.empty())
            std::cout << csv;
        else {
            wp4::write_text_file(o.output, csv);
            write_manifest("bench", {}, {o.output}, {}, o.output + ".manifest.json");
        }
        std::cout << "wp4 slope " << wp4::bench_loglog_slope(rows, "wp4") << "\n";
        try {
            std::cout << "dense slope " << wp4::bench_loglog_slope(rows, "dense") << "\n";
        } catch (const std::exception&) {
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int run(std::vector<std::string> args);

int cmd_replay(const std::string& manifest_path) {
    wp4::RunManifest m;
    try {
        m = wp4::manifest_from_json(wp4::read_text_file(manifest_path));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    std::vector<std::string> args(m.parameters.size());
    for (const auto& [k, v] : m.parameters) {
        if (k.rfind("arg", 0) == 0) args[std::stoul(k.substr(3))] = v;
    }
    return run(std::move(args));
}

int run(std::vector<std::string> args) {
    g_argv = args;
    CLI::App app{"greedy sparse approximation over the continuous wavelet dictionary"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    DecomposeOpts dec;
    auto* sd = app.add_subcommand("decompose", "extract a sparse atom list from a signal");
    sd->add_option("input", dec.input, "input WAV or raw float64")->required();
    sd->add_option("output", dec.output, "output decomposition (JSON lines)")->required();
    sd->add_option("--window", dec.window_path, "window node file (JSON [[hz,value],...])");
    sd->add_option("--atoms", dec.atoms, "number of atoms");
    sd->add_option("--order", dec.order, "trig filter order L");
    sd->add_option("--depth", dec.depth, "search depth J (0 = auto)");
    sd->add_option("--method", dec.method, "mp or omp")
        ->check(CLI::IsMember({"mp", "omp"}));
    sd->add_option("--low-cut", dec.low_cut, "bins below this go to the low band");

    std::string rin, rout;
    auto* sr = app.add_subcommand("reconstruct", "synthesize a signal from a decomposition");
    sr->add_option("input", rin, "decomposition JSON lines")->required();
    sr->add_option("output", rout, "output WAV or raw float64")->required();

    VocoderOpts voc;
    auto* sv = app.add_subcommand("vocoder", "integer time stretch, pitch preserved");
    sv->add_option("input", voc.input)->required();
    sv->add_option("output", voc.output)->required();
    sv->add_option("--stretch", voc.stretch, "integer stretch factor T");
    sv->add_option("--window", voc.window_path);
    sv->add_option("--atoms", voc.atoms);
    sv->add_option("--order", voc.order);
    sv->add_option("--depth", voc.depth);
    sv->add_option("--low-cut", voc.low_cut);

    DecomposeOpts oc;
    auto* so = app.add_subcommand("oracle-compare",
                                  "one coefficient search against the dense grid maximum");
    so->add_option("input", oc.input)->required();
    so->add_option("--out", oc.output, "optional JSON report path");
    so->add_option("--window", oc.window_path);
    so->add_option("--order", oc.order);
    so->add_option("--depth", oc.depth);
    so->add_option("--low-cut", oc.low_cut);

    BenchOpts ben;
    auto* sb = app.add_subcommand("bench", "asymptotic runtime measurement");
    sb->add_option("output", ben.output, "CSV report path (stdout when omitted)");
    sb->add_option("--sizes", ben.sizes, "comma separated signal lengths");
    sb->add_option("--dense-max", ben.dense_max, "largest N for the dense baseline");
    sb->add_option("--searches", ben.searches, "repetitions per size");

    std::string replay_path;
    auto* sp = app.add_subcommand("replay", "re-run a recorded manifest");
    sp->add_option("manifest", replay_path)->required();

    std::vector<const char*> argv;
    argv.push_back("wp4");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadArgs;
    }

    if (sd->parsed()) return cmd_decompose(dec);
    if (sr->parsed()) return cmd_reconstruct(rin, rout);
    if (sv->parsed()) return cmd_vocoder(voc);
    if (so->parsed()) return cmd_oracle_compare(oc);
    if (sb->parsed()) return cmd_bench(ben);
    if (sp->parsed()) return cmd_replay(replay_path);
    return kExitBadArgs;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(std::move(args));
}
