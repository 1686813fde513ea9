#include "reference_modes.hpp"

#include <cstring>

#include "reference_kasumi.hpp"

namespace refimpl {

std::vector<uint8_t> kgcore(uint8_t ca, uint8_t cb, uint32_t cc, uint8_t cd, uint16_t ce,
							const uint8_t ck[16], size_t cl_bits) {
	uint8_t a[8];
	a[0] = static_cast<uint8_t>(cc >> 24);
	a[1] = static_cast<uint8_t>(cc >> 16);
	a[2] = static_cast<uint8_t>(cc >> 8);
	a[3] = static_cast<uint8_t>(cc);
	a[4] = static_cast<uint8_t>((cb << 3) | (cd << 2));
	a[5] = ca;
	a[6] = static_cast<uint8_t>(ce >> 8);
	a[7] = static_cast<uint8_t>(ce);

	uint8_t modkey[16];
	for (int n = 0; n < 16; ++n) modkey[n] = static_cast<uint8_t>(ck[n] ^ 0x55);
	Kasumi whitener;
	whitener.key_schedule(modkey);
	whitener.run(a);

	Kasumi cipher;
	cipher.key_schedule(ck);

	std::vector<uint8_t> out((cl_bits + 7) / 8, 0);
	uint8_t ksb[8];
	std::memset(ksb, 0, 8);
	size_t produced = 0;
	uint32_t blkcnt = 0;
	while (produced < out.size()) {
		for (int n = 0; n < 8; ++n) ksb[n] ^= a[n];
		ksb[6] ^= static_cast<uint8_t>(blkcnt >> 8);
		ksb[7] ^= static_cast<uint8_t>(blkcnt);
		cipher.run(ksb);
		for (int n = 0; n < 8 && produced < out.size(); ++n) out[produced++] = ksb[n];
		++blkcnt;
	}
	if (cl_bits % 8)
		out.back() &= static_cast<uint8_t>(0xFF << (8 - cl_bits % 8));
	return out;
}

std::vector<uint8_t> f8(const uint8_t ck[16], uint32_t count, uint8_t bearer, uint8_t dir,
						size_t length_bits) {
	return kgcore(0x00, bearer, count, dir, 0x0000, ck, length_bits);
}

uint32_t f9(const uint8_t ik[16], uint32_t count, uint32_t fresh, int dir,
			const uint8_t* data, size_t length_bits) {
	uint8_t a[8]; /* CBC chain */
	uint8_t b[8]; /* XOR of all block-cipher outputs */
	static const uint8_t kFinalBit[8] = {0x80, 0x40, 0x20, 0x10, 8, 4, 2, 1};
	long length = static_cast<long>(length_bits);

	Kasumi cipher;
	cipher.key_schedule(ik);

	for (int n = 0; n < 4; ++n) {
		a[n] = static_cast<uint8_t>(count >> (24 - n * 8));
		a[n + 4] = static_cast<uint8_t>(fresh >> (24 - n * 8));
	}
	cipher.run(a);
	std::memcpy(b, a, 8);

	while (length >= 64) {
		for (int n = 0; n < 8; ++n) a[n] ^= *data++;
		cipher.run(a);
		length -= 64;
		for (int n = 0; n < 8; ++n) b[n] ^= a[n];
	}

	int n = 0;
	while (length >= 8) {
		a[n++] ^= *data++;
		length -= 8;
	}

	/* direction bit goes right after the last message bit */
	int i;
	if (length) {
		i = *data;
		if (dir) i |= kFinalBit[length];
	} else {
		i = dir ? 0x80 : 0;
	}
	a[n++] ^= static_cast<uint8_t>(i);

	/* then the fixed '1' bit, spilling into a fresh block when the
	 * direction bit landed on the last position of this one */
	if (length == 7 && n == 8) {
		cipher.run(a);
		for (int j = 0; j < 8; ++j) b[j] ^= a[j];
		a[0] ^= 0x80;
		n = 1;
	} else {
		if (length == 7)
			a[n] ^= 0x80;
		else
			a[n - 1] ^= kFinalBit[length + 1];
	}
	cipher.run(a);
	for (int j = 0; j < 8; ++j) b[j] ^= a[j];

	uint8_t modkey[16];
	for (int j = 0; j < 16; ++j) modkey[j] = static_cast<uint8_t>(ik[j] ^ 0xAA);
	Kasumi finalizer;
	finalizer.key_schedule(modkey);
	finalizer.run(b);

	return (static_cast<uint32_t>(b[0]) << 24) | (static_cast<uint32_t>(b[1]) << 16) |
		   (static_cast<uint32_t>(b[2]) << 8) | b[3];
}

A53Blocks a53_gsm(const uint8_t kc[8], uint32_t frame) {
	uint8_t ck[16];
	std::memcpy(ck, kc, 8);
	std::memcpy(ck + 8, kc, 8);
	std::vector<uint8_t> co = kgcore(0x0F, 0, frame, 0, 0, ck, 228);

	A53Blocks blocks{};
	std::memset(blocks.block1, 0, 15);
	std::memset(blocks.block2, 0, 15);
	for (int bit = 0; bit < 114; ++bit) {
		int src = bit;
		if ((co[src / 8] >> (7 - src % 8)) & 1) blocks.block1[bit / 8] |= 0x80 >> (bit % 8);
		src = 114 + bit;
		if ((co[src / 8] >> (7 - src % 8)) & 1) blocks.block2[bit / 8] |= 0x80 >> (bit % 8);
	}
	return blocks;
}

}  // namespace refimpl
