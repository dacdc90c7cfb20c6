#pragma once

#include "cascade.hpp"

#include <string>

namespace specwin {

/// One cycle snapshot per file. Layout: fixed header carrying magic,
/// endianness tag, version, grid metadata, cycle index and the ledger entry,
/// followed by the diagnostics samples and the raw coefficient arrays as
/// little-endian 64-bit floats, re/im interleaved per mode. Round-trips
/// bit-exactly.
void save_checkpoint(const std::string& path, const CycleSnapshot& snap,
                     const LedgerEntry& entry);

struct LoadedCheckpoint {
    CycleSnapshot snapshot;
    LedgerEntry entry;
};

LoadedCheckpoint load_checkpoint(const std::string& path);

} // namespace specwin
