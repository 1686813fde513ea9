#include "gsmsec/modes.hpp"

#include <stdexcept>

namespace gsmsec::modes {

namespace {

kasumi::CipherKey xor_mask(const kasumi::CipherKey& key, uint8_t mask) {
	kasumi::CipherKey out = key;
	for (auto& b : out.octets) b ^= mask;
	return out;
}

// Appends bits MSB-first into a byte buffer; used to assemble the f9
// padded string exactly as TS 35.201 section 5 lays it out.
class BitWriter {
 public:
	void append_bits(uint64_t value, unsigned width) {
		for (unsigned i = width; i-- > 0;) append_bit((value >> i) & 1);
	}

	void append_bit(bool v) {
		if (used_ % 8 == 0) buf_.push_back(0);
		if (v) buf_.back() |= static_cast<uint8_t>(0x80 >> (used_ % 8));
		++used_;
	}

	void append_message(std::span<const uint8_t> bytes, size_t bit_length) {
		for (size_t i = 0; i < bit_length; ++i)
			append_bit((bytes[i / 8] >> (7 - i % 8)) & 1);
	}

	void pad_zero_to_multiple(size_t block_bits) {
		while (used_ % block_bits != 0) append_bit(false);
	}

	size_t bit_count() const { return used_; }
	const Bytes& bytes() const { return buf_; }

 private:
	Bytes buf_;
	size_t used_ = 0;
};

}  // namespace

BitString kgcore(uint8_t ca, uint8_t cb, uint32_t cc, uint8_t cd, uint16_t ce,
				 const kasumi::CipherKey& ck, size_t cl_bits) {
	uint64_t a = (static_cast<uint64_t>(cc) << 32) | (static_cast<uint64_t>(cb & 0x1F) << 27) |
				 (static_cast<uint64_t>(cd & 1) << 26) | (static_cast<uint64_t>(ca) << 16) | ce;

	kasumi::Block64 reg =
		kasumi::encrypt_block(kasumi::Block64{a}, xor_mask(ck, 0x55));

	const kasumi::RoundKeySet keys = kasumi::derive_round_keys(ck);
	BitString out = BitString::zeros(cl_bits);
	kasumi::Block64 ksb{0};
	uint64_t blkcnt = 0;
	for (size_t off = 0; off < out.bytes.size(); off += 8, ++blkcnt) {
		ksb = kasumi::encrypt_block(kasumi::Block64{reg.value ^ blkcnt ^ ksb.value}, keys);
		uint8_t chunk[8];
		ksb.to_bytes(chunk);
		size_t n = std::min<size_t>(8, out.bytes.size() - off);
		std::copy(chunk, chunk + n, out.bytes.begin() + off);
	}
	out.mask_tail();
	return out;
}

BitString f8_keystream(const KeystreamRequest& req) {
	if (req.bearer >= 32) throw std::out_of_range("bearer must be a 5-bit value");
	if (req.direction > 1) throw std::out_of_range("direction must be 0 or 1");
	if (req.length_bits == 0 || req.length_bits > kMaxKeystreamBits)
		throw std::out_of_range("keystream length out of 1..20000 bits");
	return kgcore(0x00, req.bearer, req.count, req.direction, 0x0000, req.ck, req.length_bits);
}

MacRequest MacRequest::over_bytes(kasumi::CipherKey ik, uint32_t count, uint32_t fresh,
								  uint8_t direction, Bytes message) {
	MacRequest req;
	req.ik = ik;
	req.count = count;
	req.fresh = fresh;
	req.direction = direction;
	req.bit_length = message.size() * 8;
	req.message = std::move(message);
	return req;
}

uint32_t f9_mac(const MacRequest& req) {
	if (req.direction > 1) throw std::out_of_range("direction must be 0 or 1");
	if (req.bit_length > req.message.size() * 8)
		throw std::out_of_range("bit_length exceeds message buffer");

	BitWriter ps;
	ps.append_bits(req.count, 32);
	ps.append_bits(req.fresh, 32);
	ps.append_message(req.message, req.bit_length);
	ps.append_bit(req.direction != 0);
	ps.append_bit(true);
	ps.pad_zero_to_multiple(64);

	const kasumi::RoundKeySet keys = kasumi::derive_round_keys(req.ik);
	kasumi::Block64 a{0};
	uint64_t b = 0;
	const Bytes& blocks = ps.bytes();
	for (size_t off = 0; off < blocks.size(); off += 8) {
		a = kasumi::encrypt_block(kasumi::Block64{a.value ^ load_be64(blocks.data() + off)}, keys);
		b ^= a.value;
	}

	kasumi::Block64 mac = kasumi::encrypt_block(kasumi::Block64{b}, xor_mask(req.ik, 0xAA));
	return static_cast<uint32_t>(mac.value >> 32);
}

A53Keystream a53_keystream(uint64_t kc, uint32_t frame_number) {
	if (frame_number >= (1u << 22)) throw std::out_of_range("frame number must be 22 bits");

	uint8_t ck_bytes[16];
	store_be64(ck_bytes, kc);
	store_be64(ck_bytes + 8, kc);
	BitString co = kgcore(0x0F, 0, frame_number, 0, 0,
						  kasumi::CipherKey::from_bytes(ck_bytes), 228);

	A53Keystream ks{BitString::zeros(114), BitString::zeros(114)};
	for (size_t i = 0; i < 114; ++i) {
		ks.block1.set_bit(i, co.bit(i));
		ks.block2.set_bit(i, co.bit(114 + i));
	}
	return ks;
}

}  // namespace gsmsec::modes
