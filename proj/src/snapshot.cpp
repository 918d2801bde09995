#include "tqg/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace tqg {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'T', 'Q', 'G', 'S', 'N', 'A', 'P', '1'};

}  // namespace

void write_snapshot(const std::vector<const ScalarField*>& fields, double t,
                    const std::string& path) {
    if (fields.empty())
        throw std::invalid_argument("write_snapshot: no fields");
    const Grid& g = fields.front()->grid;
    for (const ScalarField* f : fields)
        require_same_grid(g, f->grid, "write_snapshot");

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw SnapshotError(SnapshotError::Kind::kIo,
                            "write_snapshot: cannot open " + path);
    char header[32] = {};
    std::memcpy(header, kMagic, 8);
    const uint32_t n = static_cast<uint32_t>(g.n);
    const uint32_t count = static_cast<uint32_t>(fields.size());
    std::memcpy(header + 8, &n, 4);
    std::memcpy(header + 12, &count, 4);
    std::memcpy(header + 16, &g.length, 8);
    std::memcpy(header + 24, &t, 8);
    out.write(header, sizeof(header));
    for (const ScalarField* f : fields)
        out.write(reinterpret_cast<const char*>(f->values.data()),
                  static_cast<std::streamsize>(f->values.size() * sizeof(double)));
    if (!out)
        throw SnapshotError(SnapshotError::Kind::kIo,
                            "write_snapshot: short write to " + path);
}

void write_snapshot(const TqgState& state, const std::string& path) {
    write_snapshot({&state.b, &state.q}, state.t, path);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw SnapshotError(SnapshotError::Kind::kIo,
                            "read_snapshot: cannot open " + path);
    char header[32];
    in.read(header, sizeof(header));
    if (in.gcount() != sizeof(header))
        throw SnapshotError(SnapshotError::Kind::kTruncated,
                            "read_snapshot: truncated header in " + path);
    if (std::memcmp(header, kMagic, 8) != 0)
        throw SnapshotError(SnapshotError::Kind::kBadMagic,
                            "read_snapshot: bad magic in " + path);
    uint32_t n = 0, count = 0;
    double length = 0, t = 0;
    std::memcpy(&n, header + 8, 4);
    std::memcpy(&count, header + 12, 4);
    std::memcpy(&length, header + 16, 8);
    std::memcpy(&t, header + 24, 8);
    if (n < 16 || n % 2 != 0 || !(length > 0) || count == 0)
        throw SnapshotError(SnapshotError::Kind::kSizeMismatch,
                            "read_snapshot: invalid header fields in " + path);

    Snapshot snap;
    snap.grid = Grid(static_cast<int>(n), length);
    snap.t = t;
    for (uint32_t f = 0; f < count; ++f) {
        ScalarField field(snap.grid);
        const std::streamsize bytes =
            static_cast<std::streamsize>(field.values.size() * sizeof(double));
        in.read(reinterpret_cast<char*>(field.values.data()), bytes);
        if (in.gcount() != bytes)
            throw SnapshotError(SnapshotError::Kind::kTruncated,
                                "read_snapshot: truncated payload in " + path);
        snap.fields.push_back(std::move(field));
    }
    // Trailing bytes mean the header undercounts the payload.
    if (in.peek() != std::char_traits<char>::eof())
        throw SnapshotError(SnapshotError::Kind::kSizeMismatch,
                            "read_snapshot: payload larger than header claims in " + path);
    return snap;
}

TqgState read_state_snapshot(const std::string& path) {
    Snapshot snap = read_snapshot(path);
    if (snap.fields.size() != 2)
        throw SnapshotError(SnapshotError::Kind::kSizeMismatch,
                            "read_state_snapshot: expected 2 fields in " + path);
    return TqgState{std::move(snap.fields[0]), std::move(snap.fields[1]), snap.t};
}

}  // namespace tqg
