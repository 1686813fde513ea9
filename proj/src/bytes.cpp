#include "gsmsec/bytes.hpp"

#include <stdexcept>

namespace gsmsec {

static const char* kHexDigits = "0123456789ABCDEF";

std::string to_hex(std::span<const uint8_t> data) {
	std::string out;
	out.reserve(data.size() * 2);
	for (uint8_t b : data) {
		out.push_back(kHexDigits[b >> 4]);
		out.push_back(kHexDigits[b & 0x0F]);
	}
	return out;
}

std::string to_hex16(uint16_t v) {
	uint8_t b[2];
	store_be16(b, v);
	return to_hex(b);
}

std::string to_hex32(uint32_t v) {
	uint8_t b[4];
	store_be32(b, v);
	return to_hex(b);
}

std::string to_hex64(uint64_t v) {
	uint8_t b[8];
	store_be64(b, v);
	return to_hex(b);
}

static int hex_val(char c) {
	if (c >= '0' && c <= '9') return c - '0';
	if (c >= 'A' && c <= 'F') return c - 'A' + 10;
	if (c >= 'a' && c <= 'f') return c - 'a' + 10;
	return -1;
}

std::optional<Bytes> from_hex(std::string_view text) {
	if (text.size() % 2 != 0) return std::nullopt;
	Bytes out;
	out.reserve(text.size() / 2);
	for (size_t i = 0; i < text.size(); i += 2) {
		int hi = hex_val(text[i]);
		int lo = hex_val(text[i + 1]);
		if (hi < 0 || lo < 0) return std::nullopt;
		out.push_back(static_cast<uint8_t>((hi << 4) | lo));
	}
	return out;
}

Bytes must_from_hex(std::string_view text) {
	auto b = from_hex(text);
	if (!b) throw std::invalid_argument("bad hex string: " + std::string(text));
	return *b;
}

uint16_t load_be16(const uint8_t* p) {
	return static_cast<uint16_t>((p[0] << 8) | p[1]);
}

uint32_t load_be32(const uint8_t* p) {
	return (static_cast<uint32_t>(p[0]) << 24) | (static_cast<uint32_t>(p[1]) << 16) |
		   (static_cast<uint32_t>(p[2]) << 8) | p[3];
}

uint64_t load_be64(const uint8_t* p) {
	return (static_cast<uint64_t>(load_be32(p)) << 32) | load_be32(p + 4);
}

void store_be16(uint8_t* p, uint16_t v) {
	p[0] = static_cast<uint8_t>(v >> 8);
	p[1] = static_cast<uint8_t>(v);
}

void store_be32(uint8_t* p, uint32_t v) {
	p[0] = static_cast<uint8_t>(v >> 24);
	p[1] = static_cast<uint8_t>(v >> 16);
	p[2] = static_cast<uint8_t>(v >> 8);
	p[3] = static_cast<uint8_t>(v);
}

void store_be64(uint8_t* p, uint64_t v) {
	store_be32(p, static_cast<uint32_t>(v >> 32));
	store_be32(p + 4, static_cast<uint32_t>(v));
}

BitString BitString::zeros(size_t bits) {
	BitString s;
	s.bit_count = bits;
	s.bytes.assign((bits + 7) / 8, 0);
	return s;
}

BitString BitString::from_bytes(Bytes data) {
	BitString s;
	s.bit_count = data.size() * 8;
	s.bytes = std::move(data);
	return s;
}

bool BitString::bit(size_t i) const {
	return (bytes[i / 8] >> (7 - (i % 8))) & 1;
}

void BitString::set_bit(size_t i, bool v) {
	uint8_t mask = static_cast<uint8_t>(1u << (7 - (i % 8)));
	if (v)
		bytes[i / 8] |= mask;
	else
		bytes[i / 8] &= static_cast<uint8_t>(~mask);
}

void BitString::mask_tail() {
	if (bit_count % 8 == 0 || bytes.empty()) return;
	unsigned keep = bit_count % 8;
	bytes.back() &= static_cast<uint8_t>(0xFF << (8 - keep));
}

Bytes xor_keystream(std::span<const uint8_t> data, const BitString& ks) {
	if (ks.bytes.size() < data.size())
		throw std::out_of_range("keystream shorter than payload");
	Bytes out(data.size());
	for (size_t i = 0; i < data.size(); ++i) out[i] = data[i] ^ ks.bytes[i];
	return out;
}

}  // namespace gsmsec
