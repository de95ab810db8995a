// Numeric stand-ins for the visual token pipeline: patch-token grids, spatial
// token compression, a projector placeholder and multimodal sequence assembly.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace aeronav {

/// Dense row-major matrix of doubles.
struct Matrix {
    std::size_t rows{0};
    std::size_t cols{0};
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    [[nodiscard]] double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    [[nodiscard]] double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    [[nodiscard]] std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
    [[nodiscard]] std::span<const double> row(std::size_t r) const {
        return {data.data() + r * cols, cols};
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// Patch tokens laid out on a height x width grid; row r*width + c of
/// `tokens` is the token at grid cell (r, c).
struct TokenGrid {
    std::size_t height{0};
    std::size_t width{0};
    Matrix tokens;

    [[nodiscard]] std::size_t channels() const noexcept { return tokens.cols; }
    /// Throws Error(ShapeMismatch) unless height, width, channels >= 1 and
    /// the row count equals height * width.
    void validate() const;

    friend bool operator==(const TokenGrid&, const TokenGrid&) = default;
};

/// Output of stc_compress: one token per g x g cell of the zero-padded grid.
struct CompressedTokens {
    std::size_t grid_size{1};
    std::size_t coarse_height{0};
    std::size_t coarse_width{0};
    /// coarse_height * coarse_width rows, channels * grid_size^2 columns.
    Matrix tokens;

    friend bool operator==(const CompressedTokens&, const CompressedTokens&) = default;
};

/// Spatial token compression. The grid is zero-padded on the bottom/right to
/// a multiple of `g`; each g x g cell becomes one token whose channels are the
/// cell's tokens concatenated in row-major order within the cell. Output
/// tokens are ordered row-major over the coarse grid.
[[nodiscard]] CompressedTokens stc_compress(const TokenGrid& grid, std::size_t g);

/// Exact inverse of stc_compress, discarding the padding. Throws
/// Error(ShapeMismatch) when the compressed shape cannot come from an
/// original_height x original_width grid.
[[nodiscard]] TokenGrid stc_decompress(const CompressedTokens& comp, std::size_t original_height,
                                       std::size_t original_width);

/// Caller-supplied affine map standing in for the MLP projector:
/// out = in * weight + bias, with weight of shape (in_width x out_width).
struct AffineProjection {
    Matrix weight;
    std::vector<double> bias;

    [[nodiscard]] Matrix apply(const Matrix& in) const;
};

/// Identity when `projection` is empty.
[[nodiscard]] Matrix project(const Matrix& tokens, const std::optional<AffineProjection>& projection);

struct VisualBlock {
    std::size_t frame{0};
    Matrix tokens;
};

struct SequenceBlock {
    enum class Kind { Visual, Text };
    Kind kind{Kind::Text};
    std::size_t frame{0};
    Matrix tokens;
};

/// Visual blocks in ascending frame order followed by one text block.
struct MultimodalSequence {
    std::vector<SequenceBlock> blocks;
    std::size_t width{0};

    [[nodiscard]] std::size_t length() const noexcept;
    /// Concatenates every block's rows into a single matrix.
    [[nodiscard]] Matrix flatten() const;
};

/// Throws Error(ShapeMismatch) if widths differ and Error(FrameOrderError)
/// if visual frames are not strictly increasing.
[[nodiscard]] MultimodalSequence assemble_sequence(std::span<const VisualBlock> visual,
                                                   const Matrix& text);

/// Runs compression and projection on each sampled frame and assembles the
/// model input for one step.
[[nodiscard]] MultimodalSequence encode_observation(std::span<const std::size_t> frames,
                                                    std::span<const TokenGrid> grids, std::size_t g,
                                                    const std::optional<AffineProjection>& projection,
                                                    const Matrix& text);

/// On-disk token matrix. Little-endian layout:
///   "AVTK" | u32 version (1) | u32 height | u32 width | u32 channels | u32 grid
///   | rows * cols float32 values, row-major
/// grid == 1 stores an uncompressed TokenGrid (height*width x channels);
/// grid > 1 stores CompressedTokens of the given original height/width.
struct TokenFile {
    std::size_t height{0};
    std::size_t width{0};
    std::size_t channels{0};
    std::size_t grid{1};
    Matrix tokens;

    static TokenFile from_grid(const TokenGrid& grid);
    static TokenFile from_compressed(const CompressedTokens& comp, std::size_t original_height,
                                     std::size_t original_width);
    [[nodiscard]] TokenGrid to_grid() const;
    [[nodiscard]] CompressedTokens to_compressed() const;
};

/// Throws Error(Io) on filesystem failures and Error(ShapeMismatch) on a bad header.
void write_token_file(const std::filesystem::path& path, const TokenFile& file);
[[nodiscard]] TokenFile read_token_file(const std::filesystem::path& path);

}  // namespace aeronav
