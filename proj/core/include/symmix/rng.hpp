#pragma once

#include <array>
#include <cstdint>

namespace symmix {

//! Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
//! easy as 1, 2, 3"). Stateless: output depends only on (counter, key).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

//! Sequential view of one Philox stream. The key is the 64-bit seed; the
//! counter carries the 64-bit block index and the 64-bit stream id, so
//! streams (seed, id) never overlap.
class PhiloxStream
{
public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  //! Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();

private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

} // namespace symmix
