#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahns/config.hpp"
#include "ahns/diagnostics.hpp"
#include "ahns/run.hpp"
#include "ahns/version.hpp"

namespace ahns {

// %.17g: shortest fixed format that round-trips every double.  All text
// output funnels through this so reruns are byte-identical.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline constexpr const char* kEnergyCsvHeader =
    "t,l2_sq,m1,m2,m3,grad_sq,mt1,mt2,mt3,e_s,mh1,mh2,mh3,vortex_stretch,balance_residual";

inline std::string energy_csv_row(const EnergyReport& r) {
  std::string s;
  s.reserve(16 * 26);
  const double cols[15] = {r.t,   r.l2_sq, r.m1,  r.m2,  r.m3,
                           r.grad_sq, r.mt1, r.mt2, r.mt3, r.e_s,
                           r.mh1, r.mh2,  r.mh3, r.vortex_stretch, r.balance_residual};
  for (int i = 0; i < 15; ++i) {
    if (i) s += ',';
    s += fmt17(cols[i]);
  }
  return s;
}

class EnergyCsvWriter {
 public:
  EnergyCsvWriter(const std::string& path, bool append)
      : out_(path, append ? (std::ios::binary | std::ios::app)
                          : (std::ios::binary | std::ios::trunc)) {
    if (!out_) throw std::runtime_error("cannot open '" + path + "' for writing");
    if (!append) out_ << kEnergyCsvHeader << '\n';
  }

  void row(const EnergyReport& r) { out_ << energy_csv_row(r) << '\n'; }

  void flush() { out_.flush(); }

 private:
  std::ofstream out_;
};

inline std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct ManifestInfo {
  std::string command;  // "run" or "resume"
  std::string config_text;
  RunConfig config;
  std::string started_at;
  std::string finished_at;
  Termination termination = Termination::completed;
  std::string message;
  std::uint64_t steps_completed = 0;
  double t_final = 0.0;
};

inline nlohmann::ordered_json make_manifest(const ManifestInfo& info) {
  const RunConfig& c = info.config;
  nlohmann::ordered_json j;
  j["command"] = info.command;
  j["code_version"] = kVersion;
  j["started_at"] = info.started_at;
  j["finished_at"] = info.finished_at;
  j["config_text"] = info.config_text;
  j["config"] = {
      {"grid",
       {{"n1", c.grid.n1},
        {"n2", c.grid.n2},
        {"n3", c.grid.n3},
        {"box_length", c.grid.box_length}}},
      {"indices",
       {{"alpha", c.indices.alpha},
        {"beta", c.indices.beta},
        {"gamma", c.indices.gamma}}},
      {"time",
       {{"dt", c.dt}, {"t_end", c.t_end}, {"integrator", integrator_name(c.integrator)}}},
      {"initial",
       {{"kind", initial_kind_name(c.initial.kind)},
        {"amplitude", c.initial.amplitude},
        {"seed", c.initial.seed},
        {"spectrum_slope", c.initial.spectrum_slope}}},
      {"diagnostics",
       {{"every", c.diagnostics_every},
        {"sobolev_order_s", c.sobolev_order_s},
        {"grad_sq_ceiling", c.grad_sq_ceiling}}},
  };
  j["theorem_regime"] = c.indices.theorem_regime();
  j["termination"] = termination_name(info.termination);
  j["message"] = info.message;
  j["steps_completed"] = info.steps_completed;
  j["t_final"] = info.t_final;
  return j;
}

// ===========================================================================
// Binary checkpoints.
//
// Layout (all multi-byte values little-endian):
//   bytes 0..7   magic "AHNSCKP1"
//   u32          format version (1)
//   u64 + bytes  config text (verbatim file the run was started from)
//   i32 x3, f64  grid n1, n2, n3, box_length
//   f64 x3       alpha, beta, gamma
//   u8           integrator id
//   f64          dt
//   f64          t
//   u64          step_count
//   u8           window count w (<= 3), then w * 15 f64 report rows
//   u8           nonlinear-history flag (multistep integrators)
//   f64 blobs    3 * spectral_size * 2 coefficients (re, im), component-major;
//                if the history flag is set, the same again for the stored
//                nonlinear term.
// ===========================================================================

class CheckpointError : public std::runtime_error {
 public:
  explicit CheckpointError(const std::string& what) : std::runtime_error(what) {}
};

struct Checkpoint {
  std::string config_text;
  GridSpec grid;
  MultiplierIndices indices;
  Integrator integrator = Integrator::etdrk2;
  double dt = 0.0;
  double t = 0.0;
  std::uint64_t step_count = 0;
  std::vector<EnergyReport> window;  // trailing reports, oldest first
  SpectralVelocity u;
  bool has_nl_history = false;
  SpectralVelocity nl_history;
};

namespace detail {

inline constexpr char kCheckpointMagic[8] = {'A', 'H', 'N', 'S', 'C', 'K', 'P', '1'};

inline void put_u32(std::string& out, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) out.push_back(char((x >> (8 * i)) & 0xff));
}
inline void put_u64(std::string& out, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) out.push_back(char((x >> (8 * i)) & 0xff));
}
inline void put_i32(std::string& out, std::int32_t x) {
  put_u32(out, static_cast<std::uint32_t>(x));
}
inline void put_f64(std::string& out, double x) {
  put_u64(out, std::bit_cast<std::uint64_t>(x));
}
inline void put_u8(std::string& out, std::uint8_t x) { out.push_back(char(x)); }

class ByteReader {
 public:
  ByteReader(const char* data, std::size_t size) : data_(data), size_(size) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }
  std::uint32_t u32() {
    const char* p = take(4);
    std::uint32_t x = 0;
    for (int i = 0; i < 4; ++i) x |= std::uint32_t(static_cast<unsigned char>(p[i])) << (8 * i);
    return x;
  }
  std::uint64_t u64() {
    const char* p = take(8);
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x |= std::uint64_t(static_cast<unsigned char>(p[i])) << (8 * i);
    return x;
  }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string bytes(std::size_t n) { return std::string(take(n), n); }
  bool exhausted() const { return pos_ == size_; }

 private:
  const char* take(std::size_t n) {
    if (pos_ + n > size_) throw CheckpointError("checkpoint: truncated file");
    const char* p = data_ + pos_;
    pos_ += n;
    return p;
  }
  const char* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

inline void put_report(std::string& out, const EnergyReport& r) {
  const double cols[15] = {r.t,   r.l2_sq, r.m1,  r.m2,  r.m3,
                           r.grad_sq, r.mt1, r.mt2, r.mt3, r.e_s,
                           r.mh1, r.mh2,  r.mh3, r.vortex_stretch, r.balance_residual};
  for (double c : cols) put_f64(out, c);
}

inline EnergyReport get_report(ByteReader& in) {
  EnergyReport r;
  double cols[15];
  for (double& c : cols) c = in.f64();
  r.t = cols[0];
  r.l2_sq = cols[1];
  r.m1 = cols[2];
  r.m2 = cols[3];
  r.m3 = cols[4];
  r.grad_sq = cols[5];
  r.mt1 = cols[6];
  r.mt2 = cols[7];
  r.mt3 = cols[8];
  r.e_s = cols[9];
  r.mh1 = cols[10];
  r.mh2 = cols[11];
  r.mh3 = cols[12];
  r.vortex_stretch = cols[13];
  r.balance_residual = cols[14];
  return r;
}

inline void put_velocity(std::string& out, const SpectralVelocity& u) {
  for (int j = 0; j < 3; ++j)
    for (const cplx& z : u.c[j].v) {
      put_f64(out, z.real());
      put_f64(out, z.imag());
    }
}

inline SpectralVelocity get_velocity(ByteReader& in, const GridSpec& grid) {
  SpectralVelocity u = SpectralVelocity::zeros(grid);
  for (int j = 0; j < 3; ++j)
    for (cplx& z : u.c[j].v) {
      const double re = in.f64();
      const double im = in.f64();
      z = cplx{re, im};
    }
  return u;
}

}  // namespace detail

inline void write_checkpoint(const std::string& path, const Checkpoint& ck) {
  if (ck.window.size() > 3)
    throw CheckpointError("checkpoint: window holds at most 3 reports");
  std::string out;
  out.reserve(128 + ck.config_text.size() +
              2 * 8 * 3 * ck.grid.spectral_size() * (ck.has_nl_history ? 2 : 1));
  out.append(detail::kCheckpointMagic, 8);
  detail::put_u32(out, 1);
  detail::put_u64(out, ck.config_text.size());
  out += ck.config_text;
  detail::put_i32(out, ck.grid.n1);
  detail::put_i32(out, ck.grid.n2);
  detail::put_i32(out, ck.grid.n3);
  detail::put_f64(out, ck.grid.box_length);
  detail::put_f64(out, ck.indices.alpha);
  detail::put_f64(out, ck.indices.beta);
  detail::put_f64(out, ck.indices.gamma);
  detail::put_u8(out, static_cast<std::uint8_t>(ck.integrator));
  detail::put_f64(out, ck.dt);
  detail::put_f64(out, ck.t);
  detail::put_u64(out, ck.step_count);
  detail::put_u8(out, static_cast<std::uint8_t>(ck.window.size()));
  for (const EnergyReport& r : ck.window) detail::put_report(out, r);
  detail::put_u8(out, ck.has_nl_history ? 1 : 0);
  detail::put_velocity(out, ck.u);
  if (ck.has_nl_history) detail::put_velocity(out, ck.nl_history);

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw CheckpointError("checkpoint: cannot open '" + path + "' for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw CheckpointError("checkpoint: short write to '" + path + "'");
}

inline Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CheckpointError("checkpoint: cannot open '" + path + "'");
  std::string blob((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  detail::ByteReader in(blob.data(), blob.size());

  const std::string magic = in.bytes(8);
  if (std::memcmp(magic.data(), detail::kCheckpointMagic, 8) != 0)
    throw CheckpointError("checkpoint: bad magic — not a checkpoint file");
  const std::uint32_t version = in.u32();
  if (version != 1)
    throw CheckpointError("checkpoint: unsupported format version " +
                          std::to_string(version));

  Checkpoint ck;
  const std::uint64_t text_size = in.u64();
  if (text_size > (1ull << 24))
    throw CheckpointError("checkpoint: implausible config text size");
  ck.config_text = in.bytes(text_size);
  ck.grid.n1 = in.i32();
  ck.grid.n2 = in.i32();
  ck.grid.n3 = in.i32();
  ck.grid.box_length = in.f64();
  try {
    ck.grid.validate();
  } catch (const std::exception& e) {
    throw CheckpointError(std::string("checkpoint: bad grid: ") + e.what());
  }
  ck.indices.alpha = in.f64();
  ck.indices.beta = in.f64();
  ck.indices.gamma = in.f64();
  const std::uint8_t integ = in.u8();
  if (integ > 2) throw CheckpointError("checkpoint: bad integrator id");
  ck.integrator = static_cast<Integrator>(integ);
  ck.dt = in.f64();
  if (!(ck.dt > 0.0)) throw CheckpointError("checkpoint: bad dt");
  ck.t = in.f64();
  ck.step_count = in.u64();
  const std::uint8_t wcount = in.u8();
  if (wcount > 3) throw CheckpointError("checkpoint: bad window size");
  for (int i = 0; i < wcount; ++i) ck.window.push_back(detail::get_report(in));
  const std::uint8_t flag = in.u8();
  if (flag > 1) throw CheckpointError("checkpoint: bad history flag");
  ck.has_nl_history = flag == 1;
  ck.u = detail::get_velocity(in, ck.grid);
  if (ck.has_nl_history) ck.nl_history = detail::get_velocity(in, ck.grid);
  if (!in.exhausted()) throw CheckpointError("checkpoint: trailing bytes");
  return ck;
}

// The config text is the authoritative record; the binary echo exists so a
// reader can size the coefficient blobs without parsing.  They must agree.
inline RunConfig checkpoint_config(const Checkpoint& ck) {
  RunConfig cfg;
  try {
    cfg = parse_config(ck.config_text);
  } catch (const std::exception& e) {
    throw CheckpointError(std::string("checkpoint: embedded config does not parse: ") +
                          e.what());
  }
  const bool match = cfg.grid == ck.grid && cfg.indices.alpha == ck.indices.alpha &&
                     cfg.indices.beta == ck.indices.beta &&
                     cfg.indices.gamma == ck.indices.gamma &&
                     cfg.integrator == ck.integrator && cfg.dt == ck.dt;
  if (!match)
    throw CheckpointError("checkpoint: embedded config disagrees with the binary echo");
  return cfg;
}

}  // namespace ahns
