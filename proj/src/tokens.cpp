#include "aeronav/tokens.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "aeronav/error.hpp"

namespace aeronav {
namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::string shape(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

constexpr std::array<char, 4> kMagic = {'A', 'V', 'T', 'K'};
constexpr std::uint32_t kTokenFileVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

void TokenGrid::validate() const {
    if (height == 0 || width == 0 || tokens.cols == 0) {
        throw Error(ErrorCode::ShapeMismatch, "token grid dimensions must be >= 1");
    }
    if (tokens.rows != height * width || tokens.data.size() != tokens.rows * tokens.cols) {
        throw Error(ErrorCode::ShapeMismatch, "token matrix " + shape(tokens.rows, tokens.cols) +
                                                  " does not match grid " + shape(height, width));
    }
}

CompressedTokens stc_compress(const TokenGrid& grid, std::size_t g) {
    if (g == 0) throw Error(ErrorCode::InvalidArgument, "grid size must be >= 1");
    grid.validate();
    const std::size_t channels = grid.channels();
    CompressedTokens out;
    out.grid_size = g;
    out.coarse_height = ceil_div(grid.height, g);
    out.coarse_width = ceil_div(grid.width, g);
    out.tokens = Matrix(out.coarse_height * out.coarse_width, channels * g * g);

    for (std::size_t cr = 0; cr < out.coarse_height; ++cr) {
        for (std::size_t cc = 0; cc < out.coarse_width; ++cc) {
            auto dst = out.tokens.row(cr * out.coarse_width + cc);
            for (std::size_t dr = 0; dr < g; ++dr) {
                for (std::size_t dc = 0; dc < g; ++dc) {
                    const std::size_t r = cr * g + dr;
                    const std::size_t c = cc * g + dc;
                    if (r >= grid.height || c >= grid.width) continue;  // zero padding
                    const auto src = grid.tokens.row(r * grid.width + c);
                    std::copy(src.begin(), src.end(), dst.begin() + (dr * g + dc) * channels);
                }
            }
        }
    }
    return out;
}

TokenGrid stc_decompress(const CompressedTokens& comp, std::size_t original_height,
                         std::size_t original_width) {
    const std::size_t g = comp.grid_size;
    if (g == 0 || original_height == 0 || original_width == 0) {
        throw Error(ErrorCode::ShapeMismatch, "grid size and original shape must be >= 1");
    }
    if (comp.coarse_height != ceil_div(original_height, g) ||
        comp.coarse_width != ceil_div(original_width, g)) {
        throw Error(ErrorCode::ShapeMismatch,
                    "coarse grid " + shape(comp.coarse_height, comp.coarse_width) +
                        " cannot come from " + shape(original_height, original_width) +
                        " with g=" + std::to_string(g));
    }
    if (comp.tokens.rows != comp.coarse_height * comp.coarse_width ||
        comp.tokens.cols % (g * g) != 0 || comp.tokens.cols == 0 ||
        comp.tokens.data.size() != comp.tokens.rows * comp.tokens.cols) {
        throw Error(ErrorCode::ShapeMismatch,
                    "compressed matrix " + shape(comp.tokens.rows, comp.tokens.cols) +
                        " is inconsistent with g=" + std::to_string(g));
    }
    const std::size_t channels = comp.tokens.cols / (g * g);
    TokenGrid grid{original_height, original_width, Matrix(original_height * original_width, channels)};
    for (std::size_t r = 0; r < original_height; ++r) {
        for (std::size_t c = 0; c < original_width; ++c) {
            const auto src = comp.tokens.row((r / g) * comp.coarse_width + c / g);
            const std::size_t offset = ((r % g) * g + c % g) * channels;
            auto dst = grid.tokens.row(r * original_width + c);
            std::copy(src.begin() + offset, src.begin() + offset + channels, dst.begin());
        }
    }
    return grid;
}

Matrix AffineProjection::apply(const Matrix& in) const {
    if (in.cols != weight.rows) {
        throw Error(ErrorCode::ShapeMismatch, "projection expects width " +
                                                  std::to_string(weight.rows) + ", got " +
                                                  std::to_string(in.cols));
    }
    if (!bias.empty() && bias.size() != weight.cols) {
        throw Error(ErrorCode::ShapeMismatch, "bias length does not match projection width");
    }
    Matrix out(in.rows, weight.cols);
    for (std::size_t r = 0; r < in.rows; ++r) {
        for (std::size_t k = 0; k < in.cols; ++k) {
            const double v = in.at(r, k);
            for (std::size_t c = 0; c < weight.cols; ++c) out.at(r, c) += v * weight.at(k, c);
        }
        if (!bias.empty()) {
            for (std::size_t c = 0; c < weight.cols; ++c) out.at(r, c) += bias[c];
        }
    }
    return out;
}

Matrix project(const Matrix& tokens, const std::optional<AffineProjection>& projection) {
    return projection ? projection->apply(tokens) : tokens;
}

std::size_t MultimodalSequence::length() const noexcept {
    std::size_t total = 0;
    for (const auto& b : blocks) total += b.tokens.rows;
    return total;
}

Matrix MultimodalSequence::flatten() const {
    Matrix out(length(), width);
    auto it = out.data.begin();
    for (const auto& b : blocks) it = std::copy(b.tokens.data.begin(), b.tokens.data.end(), it);
    return out;
}

MultimodalSequence assemble_sequence(std::span<const VisualBlock> visual, const Matrix& text) {
    MultimodalSequence seq;
    seq.width = text.cols;
    for (std::size_t i = 0; i < visual.size(); ++i) {
        if (visual[i].tokens.cols != seq.width) {
            throw Error(ErrorCode::ShapeMismatch,
                        "visual block for frame " + std::to_string(visual[i].frame) + " has width " +
                            std::to_string(visual[i].tokens.cols) + ", text has " +
                            std::to_string(seq.width));
        }
        if (i > 0 && visual[i].frame <= visual[i - 1].frame) {
            throw Error(ErrorCode::FrameOrderError, "visual frames must be strictly increasing");
        }
        seq.blocks.push_back({SequenceBlock::Kind::Visual, visual[i].frame, visual[i].tokens});
    }
    seq.blocks.push_back({SequenceBlock::Kind::Text, 0, text});
    return seq;
}

MultimodalSequence encode_observation(std::span<const std::size_t> frames,
                                      std::span<const TokenGrid> grids, std::size_t g,
                                      const std::optional<AffineProjection>& projection,
                                      const Matrix& text) {
    std::vector<VisualBlock> blocks;
    blocks.reserve(frames.size());
    for (std::size_t frame : frames) {
        if (frame >= grids.size()) {
            throw Error(ErrorCode::InvalidArgument,
                        "frame " + std::to_string(frame) + " has no token grid");
        }
        blocks.push_back({frame, project(stc_compress(grids[frame], g).tokens, projection)});
    }
    return assemble_sequence(blocks, text);
}

TokenFile TokenFile::from_grid(const TokenGrid& grid) {
    grid.validate();
    return {grid.height, grid.width, grid.channels(), 1, grid.tokens};
}

TokenFile TokenFile::from_compressed(const CompressedTokens& comp, std::size_t original_height,
                                     std::size_t original_width) {
    // validates the shape
    const TokenGrid check = stc_decompress(comp, original_height, original_width);
    return {original_height, original_width, check.channels(), comp.grid_size, comp.tokens};
}

TokenGrid TokenFile::to_grid() const {
    if (grid != 1) throw Error(ErrorCode::ShapeMismatch, "token file holds compressed tokens");
    TokenGrid out{height, width, tokens};
    out.validate();
    return out;
}

CompressedTokens TokenFile::to_compressed() const {
    if (grid == 0) throw Error(ErrorCode::ShapeMismatch, "grid size must be >= 1");
    CompressedTokens comp{grid, ceil_div(height, grid), ceil_div(width, grid), tokens};
    (void)stc_decompress(comp, height, width);
    return comp;
}

void write_token_file(const std::filesystem::path& path, const TokenFile& file) {
    if (file.tokens.data.size() != file.tokens.rows * file.tokens.cols) {
        throw Error(ErrorCode::ShapeMismatch, "token matrix storage is inconsistent");
    }
    std::string bytes(kMagic.begin(), kMagic.end());
    put_u32(bytes, kTokenFileVersion);
    put_u32(bytes, static_cast<std::uint32_t>(file.height));
    put_u32(bytes, static_cast<std::uint32_t>(file.width));
    put_u32(bytes, static_cast<std::uint32_t>(file.channels));
    put_u32(bytes, static_cast<std::uint32_t>(file.grid));
    for (double v : file.tokens.data) put_u32(bytes, std::bit_cast<std::uint32_t>(static_cast<float>(v)));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

TokenFile read_token_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    constexpr std::size_t kHeader = 24;
    if (bytes.size() < kHeader || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
        throw Error(ErrorCode::ShapeMismatch, path.string() + " is not a token file");
    }
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    if (get_u32(p + 4) != kTokenFileVersion) {
        throw Error(ErrorCode::ShapeMismatch, "unsupported token file version");
    }
    TokenFile file;
    file.height = get_u32(p + 8);
    file.width = get_u32(p + 12);
    file.channels = get_u32(p + 16);
    file.grid = get_u32(p + 20);
    if (file.height == 0 || file.width == 0 || file.channels == 0 || file.grid == 0) {
        throw Error(ErrorCode::ShapeMismatch, "token file header has a zero dimension");
    }
    const std::size_t rows = ceil_div(file.height, file.grid) * ceil_div(file.width, file.grid);
    const std::size_t cols = file.channels * file.grid * file.grid;
    if (bytes.size() != kHeader + rows * cols * 4) {
        throw Error(ErrorCode::ShapeMismatch, "token file payload size does not match its header");
    }
    file.tokens = Matrix(rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i) {
        file.tokens.data[i] = std::bit_cast<float>(get_u32(p + kHeader + 4 * i));
    }
    return file;
}

}  // namespace aeronav
