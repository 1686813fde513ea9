// Test-only references for the KASUMI modes, written the way the
// 3GPP TS 35.201 Annex 2 sample code does it: in-place 64-bit registers
// chained block by block. Independent of gsmsec::modes.

#ifndef GSMSEC_TESTS_REFERENCE_MODES_H
#define GSMSEC_TESTS_REFERENCE_MODES_H

#include <cstddef>
#include <cstdint>
#include <vector>

namespace refimpl {

// Returns ceil(cl_bits/8) bytes of keystream, tail bits zeroed.
// A = CC || CB || CD || 00 || CA || CE, pre-whitened under CK ^ 0x55..55,
// then KSB[n] = KASUMI(A ^ BLKCNT(n-1) ^ KSB[n-1]) under CK.
std::vector<uint8_t> kgcore(uint8_t ca, uint8_t cb, uint32_t cc, uint8_t cd, uint16_t ce,
							const uint8_t ck[16], size_t cl_bits);

std::vector<uint8_t> f8(const uint8_t ck[16], uint32_t count, uint8_t bearer, uint8_t dir,
						size_t length_bits);

// Port of the TS 35.201 Annex 2 f9 sample (streaming tail handling with
// the FinalBit table), returning the 32-bit MAC-I.
uint32_t f9(const uint8_t ik[16], uint32_t count, uint32_t fresh, int dir,
			const uint8_t* data, size_t length_bits);

struct A53Blocks {
	uint8_t block1[15];
	uint8_t block2[15];
};
A53Blocks a53_gsm(const uint8_t kc[8], uint32_t frame);

}  // namespace refimpl

#endif
