#!/usr/bin/env python3
"""
Tajima DST Codec
Schrijft en leest DST borduurbestanden: 512-byte header plus records van
3 bytes met gebalanceerd-ternaire verplaatsingen in eenheden van 0.1 mm.

Record layout (bit 7..0):
- byte 0: y+1, y-1, y+9, y-9, x-9, x+9, x-1, x+1
- byte 1: y+3, y-3, y+27, y-27, x-27, x+27, x-3, x+3
- byte 2: jump, kleurwissel, y+81, y-81, x-81, x+81, 1, 1
Einde: 0x00 0x00 0xF3
"""

import logging
from dataclasses import dataclass, field

from errors import BadHeader, BadRecord, CoordinateOverflow, ExtentMismatch, NameTooLong
from stitch_geometry import JUMP, STITCH, StitchPlan, StitchPoint, quantize

logger = logging.getLogger(__name__)


def _balanced_ternary(value):
    """Cijfers (-1, 0, +1) voor 1, 3, 9, 27, 81"""
    digits = []
    for _ in range(5):
        remainder = value % 3
        if remainder == 2:
            remainder = -1
        digits.append(remainder)
        value = (value - remainder) // 3
    return digits


class DstCodec:
    """Encoder/decoder voor Tajima DST"""

    HEADER_SIZE = 512
    RECORD_SIZE = 3
    MAX_STEP = 121
    UNIT_MM = 0.1
    UNITS_PER_MM = 10
    MAX_COORDINATE = 32767
    NAME_LENGTH = 16

    END_RECORD = bytes((0x00, 0x00, 0xF3))
    JUMP_FLAG = 0x80
    COLOR_FLAG = 0x40
    CONTROL_BITS = 0x03

    # (byte, bit) per ternair cijfer voor de x-as en de y-as: (+bit, -bit)
    X_BITS = ((0, 0, 1), (1, 0, 1), (0, 2, 3), (1, 2, 3), (2, 2, 3))
    Y_BITS = ((0, 7, 6), (1, 7, 6), (0, 5, 4), (1, 5, 4), (2, 5, 4))

    def __init__(self):
        self._encode_x = {v: self._axis_bytes(v, self.X_BITS) for v in range(-121, 122)}
        self._encode_y = {v: self._axis_bytes(v, self.Y_BITS) for v in range(-121, 122)}
        self._decode = [self._decode_byte(index) for index in range(3)]

    @staticmethod
    def _axis_bytes(value, layout):
        result = [0, 0, 0]
        for digit, (byte, plus_bit, minus_bit) in zip(_balanced_ternary(value), layout):
            if digit == 1:
                result[byte] |= 1 << plus_bit
            elif digit == -1:
                result[byte] |= 1 << minus_bit
        return tuple(result)

    def _decode_byte(self, index):
        """Tabel byte-waarde -> (dx, dy) bijdrage voor byte `index`"""
        table = []
        for value in range(256):
            dx = dy = 0
            for weight, (byte, plus_bit, minus_bit) in zip((1, 3, 9, 27, 81), self.X_BITS):
                if byte == index:
                    dx += weight * (((value >> plus_bit) & 1) - ((value >> minus_bit) & 1))
            for weight, (byte, plus_bit, minus_bit) in zip((1, 3, 9, 27, 81), self.Y_BITS):
                if byte == index:
                    dy += weight * (((value >> plus_bit) & 1) - ((value >> minus_bit) & 1))
            table.append((dx, dy))
        return table

    # Records

    def encode_record(self, dx, dy, jump=False):
        """
        Codeer één verplaatsing

        Args:
            dx, dy: Verplaatsing in eenheden (-121..121)
            jump: Sprong (naald niet door de stof)

        Returns:
            3 bytes
        """
        if abs(dx) > self.MAX_STEP or abs(dy) > self.MAX_STEP:
            raise CoordinateOverflow(f"record move ({dx}, {dy}) exceeds ±{self.MAX_STEP} units")
        bx = self._encode_x[dx]
        by = self._encode_y[dy]
        b2 = bx[2] | by[2] | self.CONTROL_BITS
        if jump:
            b2 |= self.JUMP_FLAG
        return bytes((bx[0] | by[0], bx[1] | by[1], b2))

    def decode_record(self, record):
        """(dx, dy, jump, color_change) uit 3 bytes"""
        b0, b1, b2 = record
        x0, y0 = self._decode[0][b0]
        x1, y1 = self._decode[1][b1]
        x2, y2 = self._decode[2][b2]
        return x0 + x1 + x2, y0 + y1 + y2, bool(b2 & self.JUMP_FLAG), bool(b2 & self.COLOR_FLAG)

    def _split_move(self, dx, dy):
        """Hebzuchtige opsplitsing in stappen van maximaal ±121"""
        steps = []
        while abs(dx) > self.MAX_STEP or abs(dy) > self.MAX_STEP:
            sx = max(-self.MAX_STEP, min(self.MAX_STEP, dx))
            sy = max(-self.MAX_STEP, min(self.MAX_STEP, dy))
            steps.append((sx, sy))
            dx -= sx
            dy -= sy
        steps.append((dx, dy))
        return steps

    # Schrijven

    def encode_moves(self, plan):
        """
        Pad vanaf de oorsprong als lijst (dx, dy, jump) records

        Tussenstappen van een lange beweging zijn sprongen; de laatste stap
        houdt het soort van het punt.
        """
        moves = []
        x = y = 0
        for point in plan.points:
            tx = quantize(point.x, self.UNITS_PER_MM)
            ty = quantize(point.y, self.UNITS_PER_MM)
            if abs(tx) > self.MAX_COORDINATE or abs(ty) > self.MAX_COORDINATE:
                raise CoordinateOverflow(
                    f"point ({point.x:g}, {point.y:g}) mm outside ±{self.MAX_COORDINATE * self.UNIT_MM:g} mm")
            steps = self._split_move(tx - x, ty - y)
            for sx, sy in steps[:-1]:
                moves.append((sx, sy, True))
            sx, sy = steps[-1]
            moves.append((sx, sy, point.kind == JUMP))
            x, y = tx, ty
        return moves

    @staticmethod
    def extents(moves):
        """(+X, -X, +Y, -Y, AX, AY) van het pad, oorsprong inbegrepen"""
        x = y = 0
        max_x = min_x = max_y = min_y = 0
        for dx, dy, _ in moves:
            x += dx
            y += dy
            max_x, min_x = max(max_x, x), min(min_x, x)
            max_y, min_y = max(max_y, y), min(min_y, y)
        return max_x, -min_x, max_y, -min_y, x, y

    def build_header(self, name, moves):
        if len(name) > self.NAME_LENGTH:
            raise NameTooLong(f"design name {name!r} longer than {self.NAME_LENGTH} characters")
        plus_x, minus_x, plus_y, minus_y, ax, ay = self.extents(moves)
        fields = [
            f"LA:{name:<16}",
            f"ST:{len(moves):07d}",
            "CO:000",
            f"+X:{plus_x:05d}",
            f"-X:{minus_x:05d}",
            f"+Y:{plus_y:05d}",
            f"-Y:{minus_y:05d}",
            f"AX:{ax:+06d}",
            f"AY:{ay:+06d}",
            "MX:+00000",
            "MY:+00000",
            "PD:******",
        ]
        header = "".join(f + "\r" for f in fields).encode("ascii", errors="replace") + b"\x1a"
        return header.ljust(self.HEADER_SIZE, b" ")

    def write(self, plan, name="EXOFABRIC"):
        """
        Codeer een StitchPlan naar DST bytes

        Args:
            plan: StitchPlan in mm
            name: Ontwerpnaam (max 16 tekens)

        Returns:
            bytes
        """
        moves = self.encode_moves(plan)
        body = b"".join(self.encode_record(dx, dy, jump) for dx, dy, jump in moves)
        data = self.build_header(name, moves) + body + self.END_RECORD
        logger.debug(f"✓ DST gecodeerd: {len(moves)} records, {len(data)} bytes")
        return data

    # Lezen

    def parse_header(self, data):
        """Header velden als dict; BadHeader bij een onleesbare header"""
        if len(data) < self.HEADER_SIZE:
            raise BadHeader(f"file has {len(data)} bytes, header needs {self.HEADER_SIZE}")
        text = data[:self.HEADER_SIZE].split(b"\x1a", 1)[0].decode("latin-1")
        fields = {}
        for chunk in text.split("\r"):
            if len(chunk) >= 3 and chunk[2] == ":":
                fields[chunk[:2]] = chunk[3:]
        if "LA" not in fields or "ST" not in fields:
            raise BadHeader("missing LA or ST field")

        header = {"LA": fields["LA"].rstrip()}
        for key in ("ST", "CO", "+X", "-X", "+Y", "-Y", "AX", "AY", "MX", "MY"):
            if key not in fields:
                continue
            value = fields[key].replace(" ", "")
            try:
                header[key] = int(value)
            except ValueError:
                raise BadHeader(f"field {key} is not a number: {fields[key]!r}") from None
        if "PD" in fields:
            header["PD"] = fields["PD"]
        return header

    def read_moves(self, data):
        """Records na de header tot het eindrecord: lijst (dx, dy, jump, color)"""
        moves = []
        offset = self.HEADER_SIZE
        while True:
            record = data[offset:offset + self.RECORD_SIZE]
            if len(record) < self.RECORD_SIZE:
                raise BadRecord("truncated record stream, no end record", offset)
            if record == self.END_RECORD:
                break
            if record[2] & self.CONTROL_BITS != self.CONTROL_BITS:
                raise BadRecord(f"control bits missing in record {record.hex()}", offset)
            moves.append(self.decode_record(record))
            offset += self.RECORD_SIZE
        trailing = len(data) - offset - self.RECORD_SIZE
        if trailing > 0:
            logger.debug(f"{trailing} bytes na het eindrecord genegeerd")
        return moves

    def check_header(self, header, moves, strict=False):
        plain = [(dx, dy, jump) for dx, dy, jump, _ in moves]
        plus_x, minus_x, plus_y, minus_y, ax, ay = self.extents(plain)
        expected = {"ST": len(moves), "+X": plus_x, "-X": minus_x,
                    "+Y": plus_y, "-Y": minus_y, "AX": ax, "AY": ay}
        problems = [
            f"{key} header {header[key]} != decoded {value}"
            for key, value in expected.items()
            if key in header and header[key] != value
        ]
        if problems:
            message = "header disagrees with records: " + "; ".join(problems)
            if strict:
                raise ExtentMismatch(message)
            logger.warning(f"⚠ {message}")
        return problems

    def read(self, data, strict=False):
        """
        Decodeer DST bytes naar een StitchPlan

        Opeenvolgende sprongrecords worden één sprongpunt. Kleurwissels
        worden als sprong gelezen.

        Args:
            data: Bytes van het bestand
            strict: ExtentMismatch in plaats van een waarschuwing

        Returns:
            StitchPlan in mm (zonder config of regio)
        """
        data = bytes(data)
        header = self.parse_header(data)
        moves = self.read_moves(data)
        self.check_header(header, moves, strict)

        points = []
        x = y = 0
        color_changes = 0
        for dx, dy, jump, color in moves:
            x += dx
            y += dy
            if color:
                color_changes += 1
                jump = True
            kind = JUMP if jump else STITCH
            point = StitchPoint(x / self.UNITS_PER_MM, y / self.UNITS_PER_MM, kind, 0)
            if kind == JUMP and points and points[-1].kind == JUMP:
                points[-1] = point
            else:
                points.append(point)
        if color_changes:
            logger.warning(f"⚠ {color_changes} kleurwissel(s) als sprong gelezen")

        return StitchPlan(points)


@dataclass(frozen=True)
class DstDocument:
    """Header velden en ruwe records van een DST bestand"""

    header: dict
    records: list = field(default_factory=list)

    @property
    def name(self):
        return self.header.get("LA", "")


_codec = DstCodec()


def write_dst(plan, name="EXOFABRIC"):
    return _codec.write(plan, name)


def read_dst(data, strict=False):
    return _codec.read(data, strict)


def read_dst_document(data):
    data = bytes(data)
    return DstDocument(_codec.parse_header(data), _codec.read_moves(data))


# Test functie
if __name__ == "__main__":
    print("DST Codec Test")
    print("=" * 50)

    codec = DstCodec()
    print(f"(+1, +1)  -> {codec.encode_record(1, 1).hex()}")
    print(f"(+121, 0) -> {codec.encode_record(121, 0).hex()}")

    plan = StitchPlan([StitchPoint(0.0, 0.0, JUMP, 0), StitchPoint(20.0, 0.0, STITCH, 0)])
    data = codec.write(plan, "demo")
    print(f"Header ST: {codec.parse_header(data)['ST']}, {len(data)} bytes")
    print("\n✓ Test voltooid")
