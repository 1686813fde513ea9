#include "gsmsec/mm_codec.hpp"

#include <algorithm>

namespace gsmsec::mm {

namespace {

constexpr uint8_t kAutnIei = 0x20;
constexpr uint8_t kExtendedResIei = 0x21;

struct Reader {
	std::span<const uint8_t> data;
	size_t pos = 0;

	size_t remaining() const { return data.size() - pos; }
	uint8_t take() { return data[pos++]; }
	std::span<const uint8_t> take(size_t n) {
		auto s = data.subspan(pos, n);
		pos += n;
		return s;
	}
};

template <size_t N>
std::array<uint8_t, N> to_array(std::span<const uint8_t> s) {
	std::array<uint8_t, N> a{};
	std::copy_n(s.begin(), N, a.begin());
	return a;
}

// Body parsers return the message, or a DecodeError when the octets do
// not fit the fixed layout. Trailing octets are checked by the caller.

using BodyResult = std::variant<SecurityMessage, DecodeError>;

BodyResult parse_auth_request(Reader& in) {
	if (in.remaining() < 17) return DecodeError::TruncatedMessage;
	AuthenticationRequest msg;
	uint8_t cksn_octet = in.take();
	if (cksn_octet & 0xF8) return DecodeError::UnknownMessageType;  // spare bits set
	msg.cksn = cksn_octet & 0x07;
	msg.rand = to_array<16>(in.take(16));
	if (in.remaining() == 0) return SecurityMessage{msg};
	if (in.take() != kAutnIei) return DecodeError::UnknownMessageType;
	if (in.remaining() < 1) return DecodeError::TruncatedMessage;
	if (in.take() != 16) return DecodeError::UnknownMessageType;
	if (in.remaining() < 16) return DecodeError::TruncatedMessage;
	msg.autn = to_array<16>(in.take(16));
	return SecurityMessage{msg};
}

BodyResult parse_auth_response(Reader& in) {
	if (in.remaining() < 4) return DecodeError::TruncatedMessage;
	AuthenticationResponse msg;
	msg.sres = to_array<4>(in.take(4));
	if (in.remaining() == 0) return SecurityMessage{msg};
	if (in.take() != kExtendedResIei) return DecodeError::UnknownMessageType;
	if (in.remaining() < 1) return DecodeError::TruncatedMessage;
	uint8_t len = in.take();
	if (len < 1 || len > 12) return DecodeError::UnknownMessageType;
	if (in.remaining() < len) return DecodeError::TruncatedMessage;
	auto v = in.take(len);
	msg.extended_res = Bytes(v.begin(), v.end());
	return SecurityMessage{msg};
}

BodyResult parse_identity_request(Reader& in) {
	if (in.remaining() < 1) return DecodeError::TruncatedMessage;
	uint8_t octet = in.take();
	if (octet & 0xF8) return DecodeError::UnknownMessageType;
	return SecurityMessage{IdentityRequest{static_cast<uint8_t>(octet & 0x07)}};
}

std::optional<DecodeError> parse_mobile_identity_lv(Reader& in, Bytes& out) {
	if (in.remaining() < 1) return DecodeError::TruncatedMessage;
	uint8_t len = in.take();
	if (len < 1 || len > 9) return DecodeError::UnknownMessageType;
	if (in.remaining() < len) return DecodeError::TruncatedMessage;
	auto v = in.take(len);
	out.assign(v.begin(), v.end());
	return std::nullopt;
}

BodyResult parse_identity_response(Reader& in) {
	IdentityResponse msg;
	if (auto err = parse_mobile_identity_lv(in, msg.mobile_identity)) return *err;
	return SecurityMessage{msg};
}

BodyResult parse_tmsi_realloc_command(Reader& in) {
	if (in.remaining() < 5) return DecodeError::TruncatedMessage;
	TmsiReallocationCommand msg;
	msg.lai = to_array<5>(in.take(5));
	if (auto err = parse_mobile_identity_lv(in, msg.mobile_identity)) return *err;
	return SecurityMessage{msg};
}

void append_mobile_identity_lv(Bytes& out, const Bytes& identity) {
	if (identity.size() < 1 || identity.size() > 9)
		throw EncodeError("mobile identity must be 1..9 octets");
	out.push_back(static_cast<uint8_t>(identity.size()));
	out.insert(out.end(), identity.begin(), identity.end());
}

}  // namespace

std::string_view message_type_name(MsgType type) {
	switch (type) {
		case MsgType::AuthenticationReject: return "AUTHENTICATION REJECT";
		case MsgType::AuthenticationRequest: return "AUTHENTICATION REQUEST";
		case MsgType::AuthenticationResponse: return "AUTHENTICATION RESPONSE";
		case MsgType::IdentityRequest: return "IDENTITY REQUEST";
		case MsgType::IdentityResponse: return "IDENTITY RESPONSE";
		case MsgType::TmsiReallocationCommand: return "TMSI REALLOCATION COMMAND";
		case MsgType::TmsiReallocationComplete: return "TMSI REALLOCATION COMPLETE";
	}
	return "?";
}

std::string_view decode_error_name(DecodeError err) {
	switch (err) {
		case DecodeError::NotMmPdu: return "NotMmPdu";
		case DecodeError::UnknownMessageType: return "UnknownMessageType";
		case DecodeError::TruncatedMessage: return "TruncatedMessage";
	}
	return "?";
}

MsgType message_type_of(const SecurityMessage& msg) {
	struct Visitor {
		MsgType operator()(const AuthenticationReject&) { return MsgType::AuthenticationReject; }
		MsgType operator()(const AuthenticationRequest&) { return MsgType::AuthenticationRequest; }
		MsgType operator()(const AuthenticationResponse&) {
			return MsgType::AuthenticationResponse;
		}
		MsgType operator()(const IdentityRequest&) { return MsgType::IdentityRequest; }
		MsgType operator()(const IdentityResponse&) { return MsgType::IdentityResponse; }
		MsgType operator()(const TmsiReallocationCommand&) {
			return MsgType::TmsiReallocationCommand;
		}
		MsgType operator()(const TmsiReallocationComplete&) {
			return MsgType::TmsiReallocationComplete;
		}
	};
	return std::visit(Visitor{}, msg);
}

Bytes encode(const SecurityMessage& msg, std::optional<bool> n_sd) {
	Bytes out;
	out.push_back(kMmProtocolDiscriminator);  // skip indicator 0000 in the high nibble
	uint8_t type = static_cast<uint8_t>(message_type_of(msg));
	if (n_sd.value_or(false)) type |= 0x40;
	out.push_back(type);

	struct Visitor {
		Bytes& out;
		void operator()(const AuthenticationReject&) {}
		void operator()(const AuthenticationRequest& m) {
			if (m.cksn > 7) throw EncodeError("cksn must be 3 bits");
			out.push_back(m.cksn);
			out.insert(out.end(), m.rand.begin(), m.rand.end());
			if (m.autn) {
				out.push_back(kAutnIei);
				out.push_back(16);
				out.insert(out.end(), m.autn->begin(), m.autn->end());
			}
		}
		void operator()(const AuthenticationResponse& m) {
			out.insert(out.end(), m.sres.begin(), m.sres.end());
			if (m.extended_res) {
				if (m.extended_res->size() < 1 || m.extended_res->size() > 12)
					throw EncodeError("extended response must be 1..12 octets");
				out.push_back(kExtendedResIei);
				out.push_back(static_cast<uint8_t>(m.extended_res->size()));
				out.insert(out.end(), m.extended_res->begin(), m.extended_res->end());
			}
		}
		void operator()(const IdentityRequest& m) {
			if (m.id_type > 7) throw EncodeError("identity type must be 3 bits");
			out.push_back(m.id_type);
		}
		void operator()(const IdentityResponse& m) { append_mobile_identity_lv(out, m.mobile_identity); }
		void operator()(const TmsiReallocationCommand& m) {
			out.insert(out.end(), m.lai.begin(), m.lai.end());
			append_mobile_identity_lv(out, m.mobile_identity);
		}
		void operator()(const TmsiReallocationComplete&) {}
	};
	std::visit(Visitor{out}, msg);
	return out;
}

DecodeResult decode(std::span<const uint8_t> pdu) {
	auto fail = [&](DecodeError kind) {
		return DecodeResult{DecodeFailure{kind, Bytes(pdu.begin(), pdu.end())}};
	};

	if (pdu.size() < 2) return fail(DecodeError::TruncatedMessage);
	uint8_t pd = pdu[0] & 0x0F;
	uint8_t skip = pdu[0] >> 4;
	if (pd != kMmProtocolDiscriminator || skip != 0) return fail(DecodeError::NotMmPdu);

	uint8_t type_octet = pdu[1];
	if (type_octet & 0x80) return fail(DecodeError::UnknownMessageType);  // reserved bit
	bool n_sd = (type_octet & 0x40) != 0;
	uint8_t code = type_octet & 0x3F;

	Reader in{pdu, 2};
	BodyResult body;
	switch (code) {
		case 0x11: body = SecurityMessage{AuthenticationReject{}}; break;
		case 0x12: body = parse_auth_request(in); break;
		case 0x14: body = parse_auth_response(in); break;
		case 0x18: body = parse_identity_request(in); break;
		case 0x19: body = parse_identity_response(in); break;
		case 0x1A: body = parse_tmsi_realloc_command(in); break;
		case 0x1B: body = SecurityMessage{TmsiReallocationComplete{}}; break;
		default: return fail(DecodeError::UnknownMessageType);
	}
	if (auto* err = std::get_if<DecodeError>(&body)) return fail(*err);
	if (in.remaining() != 0) return fail(DecodeError::UnknownMessageType);

	DecodedMessage out;
	out.header = MmHeader{pd, skip, type_octet};
	out.body = std::get<SecurityMessage>(body);
	out.n_sd = n_sd;
	return DecodeResult{out};
}

std::string describe(const DecodedMessage& msg) {
	std::string text(message_type_name(message_type_of(msg.body)));
	struct Visitor {
		std::string& text;
		void operator()(const AuthenticationReject&) {}
		void operator()(const AuthenticationRequest& m) {
			text += " cksn=" + std::to_string(m.cksn) + " rand=" + to_hex(m.rand);
			if (m.autn) text += " autn=" + to_hex(*m.autn);
		}
		void operator()(const AuthenticationResponse& m) {
			text += " sres=" + to_hex(m.sres);
			if (m.extended_res) text += " ext=" + to_hex(*m.extended_res);
		}
		void operator()(const IdentityRequest& m) {
			text += " id_type=" + std::to_string(m.id_type);
		}
		void operator()(const IdentityResponse& m) {
			text += " identity=" + to_hex(m.mobile_identity);
			auto ident = classify_mobile_identity(m.mobile_identity);
			if (ident.kind == MobileIdentity::Kind::Imsi) text += " (IMSI " + ident.imsi + ")";
			if (ident.kind == MobileIdentity::Kind::Tmsi) text += " (TMSI " + to_hex32(ident.tmsi) + ")";
		}
		void operator()(const TmsiReallocationCommand& m) {
			text += " lai=" + to_hex(m.lai) + " identity=" + to_hex(m.mobile_identity);
		}
		void operator()(const TmsiReallocationComplete&) {}
	};
	std::visit(Visitor{text}, msg.body);
	if (msg.n_sd) text += " nsd=1";
	return text;
}

Bytes mobile_identity_from_imsi(std::string_view imsi_digits) {
	if (imsi_digits.size() != 15)
		throw EncodeError("IMSI must be 15 decimal digits");
	for (char c : imsi_digits)
		if (c < '0' || c > '9') throw EncodeError("IMSI must be decimal digits");

	// type of identity 001, odd-digit flag set, first digit in the high nibble
	Bytes out;
	out.push_back(static_cast<uint8_t>(((imsi_digits[0] - '0') << 4) | 0x09));
	for (size_t i = 1; i + 1 < imsi_digits.size(); i += 2) {
		uint8_t lo = static_cast<uint8_t>(imsi_digits[i] - '0');
		uint8_t hi = static_cast<uint8_t>(imsi_digits[i + 1] - '0');
		out.push_back(static_cast<uint8_t>((hi << 4) | lo));
	}
	return out;
}

Bytes mobile_identity_from_tmsi(uint32_t tmsi) {
	Bytes out(5);
	out[0] = 0xF4;  // filler nibble, even flag clear, type 100
	store_be32(out.data() + 1, tmsi);
	return out;
}

MobileIdentity classify_mobile_identity(std::span<const uint8_t> octets) {
	MobileIdentity ident;
	if (octets.empty()) return ident;
	uint8_t type = octets[0] & 0x07;
	bool odd = (octets[0] & 0x08) != 0;
	if (type == 0x04 && octets.size() == 5 && octets[0] == 0xF4) {
		ident.kind = MobileIdentity::Kind::Tmsi;
		ident.tmsi = load_be32(octets.data() + 1);
		return ident;
	}
	if (type == 0x01) {
		std::string digits;
		digits.push_back(static_cast<char>('0' + (octets[0] >> 4)));
		if ((octets[0] >> 4) > 9) return ident;
		for (size_t i = 1; i < octets.size(); ++i) {
			uint8_t lo = octets[i] & 0x0F;
			uint8_t hi = octets[i] >> 4;
			if (lo > 9) return ident;
			digits.push_back(static_cast<char>('0' + lo));
			if (hi == 0x0F) {
				if (odd || i + 1 != octets.size()) return ident;
				break;
			}
			if (hi > 9) return ident;
			digits.push_back(static_cast<char>('0' + hi));
		}
		ident.kind = MobileIdentity::Kind::Imsi;
		ident.imsi = std::move(digits);
		return ident;
	}
	return ident;
}

}  // namespace gsmsec::mm
