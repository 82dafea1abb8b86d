// End-to-end checks of the command line tool. The binary path arrives as
// argv[1] from CMake.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "oracle.hpp"
#include "wp4/io.hpp"
#include "wp4/pursuit.hpp"
#include "wp4/search.hpp"
#include "wp4/transform.hpp"
#include "wp4/window.hpp"

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

std::string g_cli;

int run(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return rc < 0 ? rc : WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) { return wp4::read_text_file(path); }

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: wp4_cli_test <path-to-wp4-binary>\n");
        return 2;
    }
    g_cli = argv[1];
    const std::string dir = "/tmp/wp4_cli_test";
    if (std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) != 0) return 2;

    // --- a one-second 440 Hz tone with a smooth envelope -------------------
    {
        wp4::TimeSignal t;
        t.sample_rate = 8000.0;
        t.samples.resize(8000);
        for (std::size_t i = 0; i < t.samples.size(); ++i) {
            const double x = static_cast<double>(i) / t.sample_rate;
            const double env =
                0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / 8000.0));
            t.samples[i] = 0.6 * env * std::sin(2.0 * std::numbers::pi * 440.0 * x);
        }
        wp4::write_wav(dir + "/tone.wav", t);

        check(run("decompose " + dir + "/tone.wav " + dir + "/tone.jsonl --atoms 1") == 0,
              "decompose of a 440 Hz tone succeeds");
        const wp4::DecompositionFile d =
            wp4::decomposition_from_jsonl(slurp(dir + "/tone.jsonl"));
        check(d.decomposition.atoms.size() == 1, "one atom written");
        const double peak = d.decomposition.window.center();
        const double freq = peak * std::exp(-d.decomposition.atoms[0].point.g2);
        check(std::abs(freq - 440.0) <= d.grid.spacing,
              "atom frequency within one bin of 440 Hz (got " + std::to_string(freq) + ")");

        check(run("decompose " + dir + "/tone.wav " + dir + "/tone2.jsonl --atoms 1") == 0,
              "second run succeeds");
        check(slurp(dir + "/tone.jsonl") == slurp(dir + "/tone2.jsonl"),
              "reruns are byte-identical");

        check(run("replay " + dir + "/tone2.jsonl.manifest.json") == 0, "replay succeeds");
        check(slurp(dir + "/tone.jsonl") == slurp(dir + "/tone2.jsonl"),
              "replay output is byte-identical");

        check(run("reconstruct " + dir + "/tone.jsonl " + dir + "/tone_rec.wav") == 0,
              "reconstruct succeeds");
        check(run("vocoder " + dir + "/tone.wav " + dir + "/tone_x2.wav --stretch 2 --atoms 2") ==
                  0,
              "vocoder succeeds");
    }

    // --- error paths --------------------------------------------------------
    {
        check(run("decompose") == 2, "missing arguments exit 2");
        check(run("decompose " + dir + "/missing.wav " + dir + "/x.jsonl") == 3,
              "unreadable input exits 3");
        wp4::write_text_file(dir + "/empty.wav", "");
        check(run("decompose " + dir + "/empty.wav " + dir + "/x.jsonl") == 3,
              "empty wav exits 3");
        wp4::write_text_file(dir + "/bad_window.json", "[[1.0, 0.5]]");
        check(run("decompose " + dir + "/tone.wav " + dir + "/x.jsonl --window " + dir +
                  "/bad_window.json") == 3,
              "malformed window file exits 3");
    }

    // --- round trip of an exactly sparse signal (atoms on the lattice) ------
    {
        // mirror the CLI's ingestion grid: 4096 float64 samples at 4096 Hz,
        // nfft 4096, low cut 4 -> spacing 1 Hz, start 4 Hz
        const double fs = 4096.0;
        const std::size_t nfft = 4096;
        wp4::FrequencySignal s;
        s.start_freq = 4.0;
        s.spacing = fs / static_cast<double>(nfft);
        s.samples.assign(nfft / 2 + 1 - 4, wp4::cplx(0.0, 0.0));
        s.low_band.assign(4, wp4::cplx(0.0, 0.0));

        wp4::SplineWindow f;  // the CLI default for this grid
        {
            const double c = std::sqrt(s.start_freq * s.grid().top());
            f.nodes = {{c / 2.0, 0.0}, {c, 1.0}, {3.0 * c / 2.0, 0.0}};
        }
        const wp4::SplineWindow fn = wp4::normalized_signal(f);
        const wp4::FreqGrid pgrid = wp4::pad_for_search(fn, s).grid();
        const int J =
            static_cast<int>(std::floor(std::log2(static_cast<double>(pgrid.count))));
        const wp4::PhasePoint a1 = oracle::lattice_point(fn, pgrid, J, 0.31, 2.0 / 3.0);
        // the dilated support must sit inside the ingested band, otherwise the
        // signal is a truncated atom and no exact recovery exists
        const double dil = std::exp(-a1.g2);
        check(fn.support_lo() * dil >= s.start_freq && fn.support_hi() * dil <= s.grid().top(),
              "planted atom fits inside the content band");
        oracle::add_atom(s, fn, a1, wp4::cplx(0.05, 0.01));

        const wp4::TimeSignal t = wp4::to_time(s, fs, nfft);
        wp4::write_raw_f64(dir + "/sparse.f64", t);

        check(run("decompose " + dir + "/sparse.f64 " + dir + "/sparse.jsonl --atoms 4") == 0,
              "decompose of the sparse model succeeds");
        check(run("reconstruct " + dir + "/sparse.jsonl " + dir + "/sparse_rec.f64") == 0,
              "reconstruct of the sparse model succeeds");
        const wp4::TimeSignal back = wp4::read_raw_f64(dir + "/sparse_rec.f64");
        double err = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < t.samples.size(); ++i) {
            const double d = back.samples[i] - t.samples[i];
            err += d * d;
            ref += t.samples[i] * t.samples[i];
        }
        const double rel = std::sqrt(err / ref);
        check(rel < 1e-6, "round trip relative error " + std::to_string(rel) + " < 1e-6");
    }

    std::printf("%d failure(s)\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
