#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tqg/dynamics.hpp"
#include "tqg/field.hpp"

namespace tqg {

/// Binary snapshot layout: 32-byte header (8-byte magic "TQGSNAP1",
/// uint32 n, uint32 field count, float64 L, float64 t, all little-endian)
/// followed by one n*n float64 row-major payload per field; states store
/// b then q.
struct SnapshotError : std::runtime_error {
    enum class Kind { kBadMagic, kTruncated, kSizeMismatch, kIo };
    SnapshotError(Kind k, const std::string& msg)
        : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

struct Snapshot {
    Grid grid;
    double t = 0;
    std::vector<ScalarField> fields;
};

void write_snapshot(const std::vector<const ScalarField*>& fields, double t,
                    const std::string& path);
void write_snapshot(const TqgState& state, const std::string& path);

Snapshot read_snapshot(const std::string& path);

/// Read a snapshot that must hold exactly two fields (b, q).
TqgState read_state_snapshot(const std::string& path);

}  // namespace tqg
