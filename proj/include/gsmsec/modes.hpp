/**@file
	@brief KASUMI keystream and MAC modes: f8 (UEA1), f9 (UIA1) per
	3GPP TS 35.201, and the GSM A5/3 adapter per TS 55.216.

	All three ride on one keystream core (KGCORE):
	  A      = CC || CB || CD || 00 || CA || CE        (64 bits)
	  A      = KASUMI(A) under CK ^ 0x55..55           (pre-whitening)
	  KSB[0] = 0
	  KSB[n] = KASUMI(A ^ BLKCNT(n-1) ^ KSB[n-1]) under CK
	  CO     = KSB[1] || KSB[2] || ... truncated to CL bits.
	f8 sets CA=0x00, CB=BEARER, CC=COUNT, CD=DIRECTION, CE=0; A5/3 sets
	CA=0x0F, CB=0, CC=frame number, CD=0, CE=0 with CK = Kc || Kc.
*/

#ifndef GSMSEC_MODES_H
#define GSMSEC_MODES_H

#include "gsmsec/bytes.hpp"
#include "gsmsec/kasumi.hpp"

namespace gsmsec::modes {

/// Standard per-request keystream cap; longer requests are rejected.
inline constexpr size_t kMaxKeystreamBits = 20000;

BitString kgcore(uint8_t ca, uint8_t cb, uint32_t cc, uint8_t cd, uint16_t ce,
				 const kasumi::CipherKey& ck, size_t cl_bits);

struct KeystreamRequest {
	kasumi::CipherKey ck;
	uint32_t count = 0;
	uint8_t bearer = 0;     // 5 bits
	uint8_t direction = 0;  // 1 bit
	size_t length_bits = 0; // 1..kMaxKeystreamBits
};

/** f8 confidentiality keystream. Encrypt and decrypt are both XOR with
	this stream. Throws std::out_of_range when bearer, direction or
	length violate the request bounds. */
BitString f8_keystream(const KeystreamRequest& req);

struct MacRequest {
	kasumi::CipherKey ik;
	uint32_t count = 0;
	uint32_t fresh = 0;
	uint8_t direction = 0;
	Bytes message;
	size_t bit_length = 0;  // may trail into a partial final byte

	static MacRequest over_bytes(kasumi::CipherKey ik, uint32_t count, uint32_t fresh,
								 uint8_t direction, Bytes message);
};

/** f9 integrity MAC: chained KASUMI over
	COUNT || FRESH || MESSAGE || DIRECTION || 1 || 0...0, finalized under
	IK ^ 0xAA..AA; returns the leftmost 32 bits.
	Padding lives here and nowhere else. Throws std::out_of_range when
	bit_length exceeds the message buffer or direction is not 0/1. */
uint32_t f9_mac(const MacRequest& req);

/** A5/3 for GSM: 228 keystream bits per frame, split into the downlink
	and uplink halves of 114 bits. Kc (64 bits) expands to CK = Kc || Kc.
	Throws std::out_of_range when frame_number is not a 22-bit value. */
struct A53Keystream {
	BitString block1;  // network -> MS
	BitString block2;  // MS -> network
};
A53Keystream a53_keystream(uint64_t kc, uint32_t frame_number);

}  // namespace gsmsec::modes

#endif
