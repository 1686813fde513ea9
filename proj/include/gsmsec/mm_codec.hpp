/**@file
	@brief Bit-exact codec for the Mobility Management security messages,
	GSM 04.08 style.

	Wire contract (frozen here; this is the toolkit's air-interface
	format):

	  octet 1   skip indicator (bits 8-5, always 0000)
	            protocol discriminator (bits 4-1, 0101 = MM)
	  octet 2   message type: bit 8 reserved (0), bit 7 = N(SD) in
	            MS-originated messages, bits 6-1 the type code
	  octet 3+  information elements, fixed order

	Type codes, security group 01 xxxx:
	  0x11 AUTHENTICATION REJECT            (no IEs)
	  0x12 AUTHENTICATION REQUEST           cksn octet (low 3 bits, high
	                                        nibble spare), RAND 16 octets,
	                                        optional AUTN TV: IEI 0x20,
	                                        length 0x10, 16 octets
	  0x14 AUTHENTICATION RESPONSE          SRES 4 octets, optional
	                                        extended-response TLV: IEI
	                                        0x21, length 1..12, value
	  0x18 IDENTITY REQUEST                 identity type octet (low 3
	                                        bits, high nibble spare)
	  0x19 IDENTITY RESPONSE                mobile identity LV (length
	                                        1..9, value)
	  0x1A TMSI REALLOCATION COMMAND        LAI 5 octets, mobile identity
	                                        LV
	  0x1B TMSI REALLOCATION COMPLETE       (no IEs)

	Decoding is total: every input yields a message or a typed failure.
	Trailing octets after a complete message are not silently accepted;
	they decode to UnknownMessageType with the raw octets preserved, as
	do well-framed PDUs whose type code is outside the table above.
*/

#ifndef GSMSEC_MM_CODEC_H
#define GSMSEC_MM_CODEC_H

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "gsmsec/bytes.hpp"

namespace gsmsec::mm {

inline constexpr uint8_t kMmProtocolDiscriminator = 0x05;

enum class MsgType : uint8_t {
	AuthenticationReject = 0x11,
	AuthenticationRequest = 0x12,
	AuthenticationResponse = 0x14,
	IdentityRequest = 0x18,
	IdentityResponse = 0x19,
	TmsiReallocationCommand = 0x1A,
	TmsiReallocationComplete = 0x1B,
};

/// The seven message names, exactly as the type table prints them.
std::string_view message_type_name(MsgType type);

struct AuthenticationReject {
	bool operator==(const AuthenticationReject&) const = default;
};

struct AuthenticationRequest {
	uint8_t cksn = 0;  // 3 bits
	std::array<uint8_t, 16> rand{};
	std::optional<std::array<uint8_t, 16>> autn;  // present in UMTS AKA
	bool operator==(const AuthenticationRequest&) const = default;
};

struct AuthenticationResponse {
	std::array<uint8_t, 4> sres{};
	std::optional<Bytes> extended_res;  // 1..12 octets
	bool operator==(const AuthenticationResponse&) const = default;
};

struct IdentityRequest {
	uint8_t id_type = 1;  // 3 bits; 1 = IMSI, 4 = TMSI
	bool operator==(const IdentityRequest&) const = default;
};

struct IdentityResponse {
	Bytes mobile_identity;  // 1..9 octets
	bool operator==(const IdentityResponse&) const = default;
};

struct TmsiReallocationCommand {
	std::array<uint8_t, 5> lai{};
	Bytes mobile_identity;  // 1..9 octets
	bool operator==(const TmsiReallocationCommand&) const = default;
};

struct TmsiReallocationComplete {
	bool operator==(const TmsiReallocationComplete&) const = default;
};

using SecurityMessage =
	std::variant<AuthenticationReject, AuthenticationRequest, AuthenticationResponse,
				 IdentityRequest, IdentityResponse, TmsiReallocationCommand,
				 TmsiReallocationComplete>;

MsgType message_type_of(const SecurityMessage& msg);

struct MmHeader {
	uint8_t protocol_discriminator = kMmProtocolDiscriminator;  // 4 bits
	uint8_t skip_indicator = 0;                                 // 4 bits
	uint8_t message_type_octet = 0;  // as seen on the wire, N(SD) included
	bool operator==(const MmHeader&) const = default;
};

struct DecodedMessage {
	MmHeader header;
	SecurityMessage body;
	bool n_sd = false;  // bit 7 of the type octet
	bool operator==(const DecodedMessage&) const = default;
};

enum class DecodeError {
	NotMmPdu,            // protocol discriminator or skip indicator wrong
	UnknownMessageType,  // well-framed but not one of the seven codes
	TruncatedMessage,    // shorter than its fixed or declared layout
};

std::string_view decode_error_name(DecodeError err);

struct DecodeFailure {
	DecodeError kind;
	Bytes raw;  // the input octets, preserved for the caller
	bool operator==(const DecodeFailure&) const = default;
};

using DecodeResult = std::variant<DecodedMessage, DecodeFailure>;

/// Field too wide for its layout.
struct EncodeError : std::invalid_argument {
	using std::invalid_argument::invalid_argument;
};

/** Canonical octets for a message. n_sd, when given, sets bit 7 of the
	type octet (MS-originated messages only carry it; the codec does not
	police direction). Throws EncodeError for oversized IEs. */
Bytes encode(const SecurityMessage& msg, std::optional<bool> n_sd = std::nullopt);

/** Exact inverse of encode on its image; total on arbitrary octets. */
DecodeResult decode(std::span<const uint8_t> pdu);

/** One-line rendering used by the CLI and the simulator traces, e.g.
	"AUTHENTICATION REQUEST cksn=0 rand=00..00". */
std::string describe(const DecodedMessage& msg);

// Mobile identity helpers (GSM 04.08 10.5.1.4 shapes). The codec itself
// treats mobile identities as opaque 1..9 octet strings; the simulators
// use these to put IMSIs and TMSIs on the wire.
Bytes mobile_identity_from_imsi(std::string_view imsi_digits);  // 15 decimal digits
Bytes mobile_identity_from_tmsi(uint32_t tmsi);

struct MobileIdentity {
	enum class Kind { Imsi, Tmsi, Other } kind = Kind::Other;
	std::string imsi;  // set when kind == Imsi
	uint32_t tmsi = 0; // set when kind == Tmsi
};
MobileIdentity classify_mobile_identity(std::span<const uint8_t> octets);

}  // namespace gsmsec::mm

#endif
