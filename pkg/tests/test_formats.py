import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boxkit.formats import (
    ParseError,
    PartitionDocument,
    parse_partition_structured,
    parse_partition_text,
    write_partition_structured,
    write_partition_text,
)
from boxkit.geometry import Ambient, DiscreteBox, PiercingVector


class TestParseText:
    def test_basic(self):
        doc = parse_partition_text(
            "Box(1) = {1,2} x {1}\nBox(2) = {1,2} x {2}\n"
        )
        assert doc.ambient.sides == (2, 2)
        assert doc.boxes == (
            DiscreteBox.of([1, 2], [1]),
            DiscreteBox.of([1, 2], [2]),
        )

    def test_header(self):
        doc = parse_partition_text("Ambient = 4 x 2\nBox(1) = {1}  x  {2}\n")
        assert doc.ambient.sides == (4, 2)

    def test_inference_clamps_to_legal_side(self):
        doc = parse_partition_text("Box(1) = {1}\n")
        assert doc.ambient.sides == (2,)

    def test_id_order_independent_of_line_order(self):
        doc = parse_partition_text("Box(2) = {2}\nBox(1) = {1}\n")
        assert doc.boxes[0] == DiscreteBox.of([1])

    @pytest.mark.parametrize(
        "text,fragment",
        [
            ("Box(1) = {1,1}", "duplicate element"),
            ("Box(1) = {1}\nBox(1) = {2}", "duplicate id"),
            ("Box(2) = {1}", "contiguous"),
            ("Box(1) = {0}", "positive"),
            ("Box(1) = {}", "empty factor"),
            ("Box(1) = 1,2", "malformed"),
            ("nonsense", "malformed"),
            ("", "no boxes"),
            ("Box(1) = {1}\nBox(2) = {1} x {2}", "dimension"),
        ],
    )
    def test_errors(self, text, fragment):
        with pytest.raises(ParseError, match=fragment):
            parse_partition_text(text)

    def test_error_carries_line_number(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_partition_text("Box(1) = {1}\nBox(2) = {1,1}\n")


class TestWriteText:
    def test_header_only_when_needed(self):
        doc = PartitionDocument(
            Ambient((3,)), (DiscreteBox.of([1]), DiscreteBox.of([2, 3]))
        )
        assert "Ambient" not in write_partition_text(doc)
        padded = PartitionDocument(Ambient((4,)), doc.boxes)
        assert write_partition_text(padded).startswith("Ambient = 4\n")

    def test_exact_grammar(self):
        doc = PartitionDocument(
            Ambient((3, 2)), (DiscreteBox.of([3, 1], [2]),)
        )
        assert write_partition_text(doc) == "Box(1) = {1,3} x {2}\n"


@st.composite
def documents(draw):
    d = draw(st.integers(1, 3))
    sides = tuple(draw(st.integers(2, 6)) for _ in range(d))
    n_boxes = draw(st.integers(1, 6))
    boxes = []
    for _ in range(n_boxes):
        factors = tuple(
            tuple(
                sorted(
                    draw(
                        st.sets(
                            st.integers(1, n), min_size=1, max_size=n
                        )
                    )
                )
            )
            for n in sides
        )
        boxes.append(DiscreteBox(factors))
    labels = None
    if draw(st.booleans()):
        labels = tuple(
            PiercingVector(
                tuple(draw(st.integers(1, 4)) for _ in range(d))
            )
            for _ in boxes
        )
    meta = tuple(
        sorted(
            draw(
                st.dictionaries(
                    st.text(
                        alphabet="abcdefgk", min_size=1, max_size=5
                    ),
                    st.text(alphabet="xyz123", max_size=5),
                    max_size=2,
                )
            ).items()
        )
    )
    return PartitionDocument(Ambient(sides), tuple(boxes), labels, meta)


@given(documents())
@settings(max_examples=150, deadline=None)
def test_text_round_trip(doc):
    bare = PartitionDocument(doc.ambient, doc.boxes)
    assert parse_partition_text(write_partition_text(bare)) == bare


@given(documents())
@settings(max_examples=150, deadline=None)
def test_structured_round_trip(doc):
    assert parse_partition_structured(write_partition_structured(doc)) == doc


def test_labels_must_match_boxes():
    with pytest.raises(Exception):
        PartitionDocument(
            Ambient((2,)),
            (DiscreteBox.of([1]),),
            (PiercingVector((1,)), PiercingVector((1,))),
        )
