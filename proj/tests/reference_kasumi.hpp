// Test-only KASUMI reference, kept in the style of the 3GPP TS 35.202
// Annex 2 sample code: in-place byte arrays, per-round subkey arrays.
// Deliberately independent of gsmsec::kasumi so the two can arbitrate
// each other on random inputs.

#ifndef GSMSEC_TESTS_REFERENCE_KASUMI_H
#define GSMSEC_TESTS_REFERENCE_KASUMI_H

#include <cstdint>

namespace refimpl {

class Kasumi {
 public:
	void key_schedule(const uint8_t key[16]);
	void run(uint8_t data[8]) const;  // encrypts one 64-bit block in place

	static uint16_t fi(uint16_t in, uint16_t subkey);

 private:
	uint32_t fo(uint32_t in, int round) const;
	uint32_t fl(uint32_t in, int round) const;

	uint16_t kli1_[8], kli2_[8];
	uint16_t koi1_[8], koi2_[8], koi3_[8];
	uint16_t kii1_[8], kii2_[8], kii3_[8];
};

}  // namespace refimpl

#endif
