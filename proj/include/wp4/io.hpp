#pragma once

#include <string>

#include "wp4/pursuit.hpp"
#include "wp4/search.hpp"
#include "wp4/types.hpp"

namespace wp4 {

/// Time-domain samples with their rate; the boundary representation used by
/// the CLI. Mono only.
struct TimeSignal {
    double sample_rate = 0.0;
    std::vector<double> samples;
};

/// Real FFT ingestion: bins below `low_cut_bins` go to low_band; the rest are
/// the positive-frequency samples. The time signal is zero-padded to a power
/// of two.
struct FreqConversion {
    FrequencySignal signal;
    std::size_t nfft = 0;
    double sample_rate = 0.0;
    std::size_t n_samples = 0;  // original length before padding
};

FreqConversion to_frequency(const TimeSignal& t, std::size_t low_cut_bins = 4);

/// Inverse conversion via conjugate-symmetric spectrum; length picks the
/// number of output samples (0 keeps the full FFT frame).
TimeSignal to_time(const FrequencySignal& s, double sample_rate, std::size_t length = 0);

TimeSignal read_wav(const std::string& path);
void write_wav(const std::string& path, const TimeSignal& t);

/// Raw little-endian float64 with a JSON sidecar ({"sample_rate": ...} at
/// path + ".json").
TimeSignal read_raw_f64(const std::string& path);
void write_raw_f64(const std::string& path, const TimeSignal& t);

SplineWindow read_window_json(const std::string& path);
void write_window_json(const std::string& path, const SplineWindow& f);

/// Decomposition JSON lines: a header object with the window nodes and grid
/// metadata, then one object per atom
/// {"g1_seconds":..,"g2_logscale":..,"coeff_re":..,"coeff_im":..}.
struct DecompositionFile {
    Decomposition decomposition;
    FreqGrid grid;      // grid the coefficients synthesize on
    double sample_rate = 0.0;
    std::size_t nfft = 0;
    std::size_t n_samples = 0;
    std::vector<cplx> low_band;
};

std::string decomposition_to_jsonl(const DecompositionFile& d);
DecompositionFile decomposition_from_jsonl(const std::string& text);

std::string trace_to_jsonl(const SearchTrace& trace);

/// Everything needed to replay a run byte-for-byte.
struct RunManifest {
    std::string command;
    std::string version;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<std::pair<std::string, double>> timings_ms;
};

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace wp4
