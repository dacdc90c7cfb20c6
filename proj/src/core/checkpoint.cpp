#include "checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace specwin {

namespace {

constexpr std::uint32_t kMagic = 0x4b435753;  // "SWCK"
constexpr std::uint32_t kEndianTag = 0x01020304;
constexpr std::uint32_t kVersion = 1;

std::uint32_t stop_code(const std::string& name) {
    if (name == "predicate") return 0;
    if (name == "time_limit") return 1;
    if (name == "step_underflow") return 2;
    if (name == "non_finite_state") return 3;
    return 4;
}

const char* stop_name(std::uint32_t code) {
    switch (code) {
    case 0: return "predicate";
    case 1: return "time_limit";
    case 2: return "step_underflow";
    case 3: return "non_finite_state";
    }
    return "unknown";
}

template <typename T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void get(std::istream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
}

void put_field(std::ostream& os, const SpectralField& f) {
    for (const cplx& c : f.data()) {
        double re = c.real(), im = c.imag();
        put(os, re);
        put(os, im);
    }
}

void get_field(std::istream& is, SpectralField& f) {
    for (cplx& c : f.data()) {
        double re, im;
        get(is, re);
        get(is, im);
        c = cplx(re, im);
    }
}

} // namespace

void save_checkpoint(const std::string& path, const CycleSnapshot& snap,
                     const LedgerEntry& entry) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");

    const SpectralField& pre = snap.pre_restart;
    const bool has_post = snap.post_respawn.size() > 0;

    put(os, kMagic);
    put(os, kEndianTag);
    put(os, kVersion);
    put(os, static_cast<std::uint32_t>(pre.grid().dim));
    put(os, static_cast<std::uint32_t>(pre.grid().n));
    put(os, static_cast<std::uint32_t>(pre.ncomp()));
    put(os, static_cast<std::int32_t>(snap.cycle));
    put(os, static_cast<std::uint32_t>(has_post ? 1 : 0));
    put(os, snap.t_local);
    for (int a = 0; a < 3; ++a) put(os, static_cast<std::int32_t>(snap.center_index[a]));

    put(os, entry.t_local);
    put(os, entry.increment_original);
    put(os, entry.accumulated_original);
    put(os, entry.max_vort_local);
    put(os, entry.max_vort_original);
    put(os, entry.viscosity);
    put(os, entry.zoom);
    for (int a = 0; a < 3; ++a) put(os, entry.center_local[a]);
    for (int a = 0; a < 3; ++a) put(os, entry.center_original[a]);
    put(os, static_cast<std::int64_t>(entry.accepted_steps));
    put(os, static_cast<std::int64_t>(entry.rejected_steps));
    put(os, static_cast<std::int32_t>(entry.taylor_warnings));
    put(os, stop_code(entry.stop_reason));

    put(os, static_cast<std::uint32_t>(snap.samples.size()));
    for (const DiagnosticsSample& d : snap.samples) {
        put(os, d.t_local);
        put(os, d.dt);
        put(os, d.max_vort_component);
        put(os, d.max_vort_modulus);
        put(os, d.taylor);
        put(os, d.energy_ratio);
    }

    put_field(os, pre);
    if (has_post) put_field(os, snap.post_respawn);
    if (!os) fail(ErrorCode::IoError, "write failed for '" + path + "'");
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(ErrorCode::MissingCheckpoint, "cannot open '" + path + "'");

    std::uint32_t magic, endian, version, dim, n, ncomp, has_post;
    std::int32_t cycle;
    get(is, magic);
    get(is, endian);
    get(is, version);
    if (magic != kMagic) fail(ErrorCode::IoError, "'" + path + "' is not a checkpoint file");
    if (endian != kEndianTag)
        fail(ErrorCode::IoError, "'" + path + "' was written with a different byte order");
    if (version != kVersion) fail(ErrorCode::IoError, "unsupported checkpoint version");
    get(is, dim);
    get(is, n);
    get(is, ncomp);
    get(is, cycle);
    get(is, has_post);

    LoadedCheckpoint out;
    out.snapshot.cycle = cycle;
    get(is, out.snapshot.t_local);
    for (int a = 0; a < 3; ++a) {
        std::int32_t v;
        get(is, v);
        out.snapshot.center_index[a] = v;
    }

    LedgerEntry& e = out.entry;
    e.cycle = cycle;
    get(is, e.t_local);
    get(is, e.increment_original);
    get(is, e.accumulated_original);
    get(is, e.max_vort_local);
    get(is, e.max_vort_original);
    get(is, e.viscosity);
    get(is, e.zoom);
    for (int a = 0; a < 3; ++a) get(is, e.center_local[a]);
    for (int a = 0; a < 3; ++a) get(is, e.center_original[a]);
    std::int64_t acc, rej;
    get(is, acc);
    get(is, rej);
    e.accepted_steps = acc;
    e.rejected_steps = rej;
    std::int32_t warn;
    get(is, warn);
    e.taylor_warnings = warn;
    std::uint32_t code;
    get(is, code);
    e.stop_reason = stop_name(code);

    std::uint32_t nsamp;
    get(is, nsamp);
    out.snapshot.samples.resize(nsamp);
    for (DiagnosticsSample& d : out.snapshot.samples) {
        get(is, d.t_local);
        get(is, d.dt);
        get(is, d.max_vort_component);
        get(is, d.max_vort_modulus);
        get(is, d.taylor);
        get(is, d.energy_ratio);
    }

    Grid grid(static_cast<int>(dim), static_cast<int>(n));
    out.snapshot.pre_restart = SpectralField(grid, static_cast<int>(ncomp));
    get_field(is, out.snapshot.pre_restart);
    if (has_post) {
        out.snapshot.post_respawn = SpectralField(grid, static_cast<int>(ncomp));
        get_field(is, out.snapshot.post_respawn);
    }
    if (!is) fail(ErrorCode::IoError, "truncated checkpoint '" + path + "'");
    return out;
}

} // namespace specwin
