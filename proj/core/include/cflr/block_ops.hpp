#pragma once

// Structural transforms between a |V| x |V| matrix and the block matrices
// that hold one slot per index value. A horizontal block is |V| x k|V| with
// slot t in columns [t|V|, (t+1)|V|); a vertical block is k|V| x |V| with
// slot t in rows [t|V|, (t+1)|V|). All transforms are pure re-indexing.

#include <cstddef>

#include "cflr/bool_mat.hpp"

namespace cflr {

enum class BlockSide : unsigned char { kHorizontal, kVertical };

/// Places a (|V| x |V|) into slot t of a k-slot block matrix.
BoolMat block_offset(const BoolMat& a, Index slot, Index universe_size, BlockSide side);

/// Vertical block (k|V| x |V|) to block diagonal (k|V| x k|V|):
/// (t|V| + u, w) -> (t|V| + u, t|V| + w).
BoolMat block_diagonalize(const BoolMat& vertical, Index block_size, Index universe_size);

/// Horizontal block (|V| x k|V|) to the union of its slots (|V| x |V|).
BoolMat block_collapse(const BoolMat& horizontal, Index block_size, Index universe_size);

/// Vertical block to the union of its slots (|V| x |V|).
BoolMat vertical_collapse(const BoolMat& vertical, Index block_size, Index universe_size);

/// (t|V| + u, w) -> (u, t|V| + w).
BoolMat vertical_to_horizontal(const BoolMat& vertical, Index block_size, Index universe_size);
/// (u, t|V| + w) -> (t|V| + u, w).
BoolMat horizontal_to_vertical(const BoolMat& horizontal, Index block_size, Index universe_size);

/// Vertical block holding `a` in every slot.
BoolMat vertical_broadcast(const BoolMat& a, Index universe_size);

/// Slot t of a vertical block as a |V| x |V| matrix.
BoolMat vertical_slice(const BoolMat& vertical, Index slot, Index block_size,
                       Index universe_size);

}  // namespace cflr
