#include "wp4/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wp4/fft.hpp"
#include "wp4/window.hpp"

namespace wp4 {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

FreqConversion to_frequency(const TimeSignal& t, std::size_t low_cut_bins) {
    if (t.samples.empty()) throw std::runtime_error("empty signal");
    if (!(t.sample_rate > 0.0)) throw std::runtime_error("bad sample rate");
    const std::size_t nfft = next_pow2(t.samples.size());
    std::vector<cplx> buf(nfft, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < t.samples.size(); ++i) buf[i] = t.samples[i];
    fft(buf, false);

    const double r = t.sample_rate / static_cast<double>(nfft);
    if (low_cut_bins < 1) low_cut_bins = 1;  // omega_0 must be positive
    const std::size_t top = nfft / 2;
    if (low_cut_bins + 1 >= top) throw std::runtime_error("signal too short for the low cut");

    FreqConversion out;
    out.nfft = nfft;
    out.sample_rate = t.sample_rate;
    out.n_samples = t.samples.size();
    out.signal.start_freq = r * static_cast<double>(low_cut_bins);
    out.signal.spacing = r;
    out.signal.low_band.assign(buf.begin(), buf.begin() + static_cast<long>(low_cut_bins));
    out.signal.samples.assign(buf.begin() + static_cast<long>(low_cut_bins),
                              buf.begin() + static_cast<long>(top) + 1);
    return out;
}

TimeSignal to_time(const FrequencySignal& s, double sample_rate, std::size_t length) {
    const std::size_t low = s.low_band.size();
    const std::size_t top = low + s.samples.size() - 1;
    const std::size_t nfft = next_pow2(2 * top);
    std::vector<cplx> buf(nfft, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < low; ++k) buf[k] = s.low_band[k];
    for (std::size_t k = 0; k < s.samples.size(); ++k) buf[low + k] = s.samples[k];
    for (std::size_t k = 1; k < nfft / 2; ++k) buf[nfft - k] = std::conj(buf[k]);
    buf[nfft / 2] = cplx(buf[nfft / 2].real(), 0.0);
    fft(buf, true);
    TimeSignal t;
    t.sample_rate = sample_rate;
    const std::size_t n = length == 0 ? nfft : std::min(length, nfft);
    t.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) t.samples[i] = buf[i].real() / static_cast<double>(nfft);
    return t;
}

namespace {

uint32_t rd_u32(const unsigned char* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}
uint16_t rd_u16(const unsigned char* p) {
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

}  // namespace

TimeSignal read_wav(const std::string& path) {
    const std::string blob = read_text_file(path);
    const auto* p = reinterpret_cast<const unsigned char*>(blob.data());
    if (blob.size() < 44 || std::memcmp(p, "RIFF", 4) != 0 || std::memcmp(p + 8, "WAVE", 4) != 0)
        throw std::runtime_error(path + ": not a RIFF/WAVE file");

    uint16_t format = 0, channels = 0, bits = 0;
    uint32_t rate = 0;
    std::size_t data_off = 0, data_len = 0;
    std::size_t off = 12;
    while (off + 8 <= blob.size()) {
        const uint32_t len = rd_u32(p + off + 4);
        if (std::memcmp(p + off, "fmt ", 4) == 0 && off + 8 + 16 <= blob.size()) {
            format = rd_u16(p + off + 8);
            channels = rd_u16(p + off + 10);
            rate = rd_u32(p + off + 12);
            bits = rd_u16(p + off + 22);
        } else if (std::memcmp(p + off, "data", 4) == 0) {
            data_off = off + 8;
            data_len = std::min<std::size_t>(len, blob.size() - data_off);
        }
        off += 8 + len + (len & 1);
    }
    if (data_off == 0 || rate == 0) throw std::runtime_error(path + ": malformed WAV");
    if (channels != 1) throw std::runtime_error(path + ": only mono input is supported");

    TimeSignal t;
    t.sample_rate = rate;
    if (format == 1 && bits == 16) {
        const std::size_t n = data_len / 2;
        t.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            int16_t v;
            std::memcpy(&v, p + data_off + 2 * i, 2);
            t.samples[i] = static_cast<double>(v) / 32768.0;
        }
    } else if (format == 3 && bits == 32) {
        const std::size_t n = data_len / 4;
        t.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            float v;
            std::memcpy(&v, p + data_off + 4 * i, 4);
            t.samples[i] = v;
        }
    } else {
        throw std::runtime_error(path + ": unsupported WAV encoding (PCM16 or float32 only)");
    }
    if (t.samples.empty()) throw std::runtime_error(path + ": empty WAV");
    return t;
}

void write_wav(const std::string& path, const TimeSignal& t) {
    const uint32_t n = static_cast<uint32_t>(t.samples.size());
    const uint32_t data_len = 4 * n;
    std::string out;
    out.reserve(58 + data_len);
    auto u32 = [&out](uint32_t v) {
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    };
    auto u16 = [&out](uint16_t v) {
        out.push_back(static_cast<char>(v & 0xff));
        out.push_back(static_cast<char>((v >> 8) & 0xff));
    };
    out += "RIFF";
    u32(36 + data_len);
    out += "WAVEfmt ";
    u32(16);
    u16(3);  // IEEE float
    u16(1);
    u32(static_cast<uint32_t>(t.sample_rate));
    u32(static_cast<uint32_t>(t.sample_rate) * 4);
    u16(4);
    u16(32);
    out += "data";
    u32(data_len);
    for (double s : t.samples) {
        const float v = static_cast<float>(s);
        char b[4];
        std::memcpy(b, &v, 4);
        out.append(b, 4);
    }
    write_text_file(path, out);
}

TimeSignal read_raw_f64(const std::string& path) {
    const std::string blob = read_text_file(path);
    if (blob.size() % 8 != 0) throw std::runtime_error(path + ": size is not a multiple of 8");
    const json side = json::parse(read_text_file(path + ".json"));
    TimeSignal t;
    t.sample_rate = side.at("sample_rate").get<double>();
    t.samples.resize(blob.size() / 8);
    std::memcpy(t.samples.data(), blob.data(), blob.size());
    return t;
}

void write_raw_f64(const std::string& path, const TimeSignal& t) {
    std::string blob(t.samples.size() * 8, '\0');
    std::memcpy(blob.data(), t.samples.data(), blob.size());
    write_text_file(path, blob);
    json side;
    side["sample_rate"] = t.sample_rate;
    write_text_file(path + ".json", side.dump());
}

SplineWindow read_window_json(const std::string& path) {
    const json j = json::parse(read_text_file(path));
    SplineWindow f;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::runtime_error(path + ": window file must be an array of [hz, value] pairs");
        f.nodes.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    validate(f);
    return f;
}

void write_window_json(const std::string& path, const SplineWindow& f) {
    json j = json::array();
    for (const WindowNode& n : f.nodes) j.push_back({n.abscissa, n.value});
    write_text_file(path, j.dump());
}

std::string decomposition_to_jsonl(const DecompositionFile& d) {
    std::ostringstream out;
    json header;
    header["type"] = "header";
    json win = json::array();
    for (const WindowNode& n : d.decomposition.window.nodes) win.push_back({n.abscissa, n.value});
    header["window"] = win;
    header["start_freq"] = d.grid.start_freq;
    header["spacing"] = d.grid.spacing;
    header["count"] = d.grid.count;
    header["sample_rate"] = d.sample_rate;
    header["nfft"] = d.nfft;
    header["n_samples"] = d.n_samples;
    header["residual_norms"] = d.decomposition.residual_norms;
    json lb = json::array();
    for (const cplx& v : d.low_band) lb.push_back({v.real(), v.imag()});
    header["low_band"] = lb;
    out << header.dump() << "\n";
    for (const Atom& a : d.decomposition.atoms) {
        json row;
        row["g1_seconds"] = a.point.g1;
        row["g2_logscale"] = a.point.g2;
        row["coeff_re"] = a.coeff.real();
        row["coeff_im"] = a.coeff.imag();
        out << row.dump() << "\n";
    }
    return out.str();
}

DecompositionFile decomposition_from_jsonl(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    DecompositionFile d;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        if (!have_header) {
            if (j.value("type", "") != "header") throw std::runtime_error("missing JSONL header");
            for (const auto& pair : j.at("window"))
                d.decomposition.window.nodes.push_back(
                    {pair[0].get<double>(), pair[1].get<double>()});
            d.grid.start_freq = j.at("start_freq").get<double>();
            d.grid.spacing = j.at("spacing").get<double>();
            d.grid.count = j.at("count").get<std::size_t>();
            d.sample_rate = j.value("sample_rate", 0.0);
            d.nfft = j.value("nfft", std::size_t{0});
            d.n_samples = j.value("n_samples", std::size_t{0});
            if (j.contains("residual_norms"))
                d.decomposition.residual_norms = j["residual_norms"].get<std::vector<double>>();
            for (const auto& pair : j.at("low_band"))
                d.low_band.emplace_back(pair[0].get<double>(), pair[1].get<double>());
            have_header = true;
            continue;
        }
        Atom a;
        a.point.g1 = j.at("g1_seconds").get<double>();
        a.point.g2 = j.at("g2_logscale").get<double>();
        a.coeff = cplx(j.at("coeff_re").get<double>(), j.at("coeff_im").get<double>());
        d.decomposition.atoms.push_back(a);
    }
    if (!have_header) throw std::runtime_error("empty decomposition file");
    return d;
}

std::string trace_to_jsonl(const SearchTrace& trace) {
    std::ostringstream out;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const SearchStep& s = trace.steps[i];
        json j;
        j["step"] = i + 1;
        j["chosen"] = s.chosen;
        j["child_norms"] = s.child_norms;
        j["band_lo"] = s.band.lo;
        j["band_hi"] = s.band.hi;
        j["bits"] = s.bits;
        j["node_count"] = s.node_count;
        out << j.dump() << "\n";
    }
    return out.str();
}

std::string manifest_to_json(const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["version"] = m.version;
    json params = json::object();
    for (const auto& [k, v] : m.parameters) params[k] = v;
    j["parameters"] = params;
    j["inputs"] = m.inputs;
    j["outputs"] = m.outputs;
    json t = json::object();
    for (const auto& [k, v] : m.timings_ms) t[k] = v;
    j["timings_ms"] = t;
    return j.dump(2);
}

RunManifest manifest_from_json(const std::string& text) {
    const json j = json::parse(text);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.version = j.value("version", "");
    for (const auto& [k, v] : j.at("parameters").items())
        m.parameters.emplace_back(k, v.get<std::string>());
    m.inputs = j.value("inputs", std::vector<std::string>{});
    m.outputs = j.value("outputs", std::vector<std::string>{});
    if (j.contains("timings_ms"))
        for (const auto& [k, v] : j["timings_ms"].items())
            m.timings_ms.emplace_back(k, v.get<double>());
    return m;
}

}  // namespace wp4
