import pytest

from kricker.presentation import (
    PresentationError,
    Slice,
    TangleProgram,
    append_split_unknot,
    move_base_point,
    parse_program,
    reverse_component,
    stack_programs,
    trace_components,
)
from kricker import presets


class TestParse:
    def test_empty_program(self):
        p = parse_program("disk 0 0\n")
        assert len(p.slices) == 1
        assert trace_components(p).n_components == 0

    def test_round_trip(self):
        for name in presets.PROGRAMS:
            p = presets.program(name)
            assert parse_program(p.text()) == p

    def test_comments_and_blanks(self):
        p = parse_program("# a comment\n\ncup 0 lr  # inline\ncap 0\ndisk 0 0\n")
        assert len(p.slices) == 3

    def test_width_mismatch_reports_slice(self):
        with pytest.raises(PresentationError) as e:
            parse_program("cup 0 lr\nx+ 1\ncap 0\ndisk 0 0\n")
        assert e.value.slice_index == 1

    def test_no_disk(self):
        with pytest.raises(PresentationError, match="no disk"):
            parse_program("cup 0 lr\ncap 0\n")

    def test_two_disks(self):
        with pytest.raises(PresentationError, match="multiple disk"):
            parse_program("disk 0 0\ncup 0 lr\ncap 0\ndisk 0 0\n")

    def test_unclosed(self):
        with pytest.raises(PresentationError, match="unclosed|width"):
            TangleProgram([Slice("cup", 0, "lr"), Slice("disk", 0, 0)])


class TestTrace:
    def test_split_unknot(self):
        cm = trace_components(presets.program("unknot0"))
        assert cm.n_components == 1
        assert cm.disk_signs(0) == []
        assert cm.crossings_of(0) == []

    def test_fig8_example(self):
        cm = trace_components(presets.program("fig8example"))
        assert cm.n_components == 2
        for i in range(2):
            assert sorted(cm.disk_signs(i)) == [-1, 1]
        assert len(cm.crossings) == 4
        assert all(c.comp_a != c.comp_b for c in cm.crossings.values())

    def test_nonzero_disk_sum_rejected(self):
        # a component passing the disk twice in the same direction
        bad = "cup 0 lr\ncup 2 rl\ndisk 1 2\nx+ 2\ncap 1\ncap 0\n"
        with pytest.raises(PresentationError, match="null-homologous"):
            trace_components(parse_program(bad))

    def test_deterministic_numbering(self):
        cm = trace_components(presets.program("fig8example"))
        cm2 = trace_components(presets.program("fig8example"))
        assert cm.events == cm2.events

    def test_reparse_invariance(self):
        p = presets.program("trefoil")
        cm1 = trace_components(p)
        cm2 = trace_components(parse_program(p.text()))
        assert cm1.n_components == cm2.n_components
        assert cm1.events == cm2.events


class TestBasePoint:
    def test_move_and_back(self):
        cm = trace_components(presets.program("ring"))
        m1, eps1 = move_base_point(cm, 0, +1)
        m2, eps2 = move_base_point(m1, 0, -1)
        assert eps1 in (1, -1) and eps2 == eps1
        assert m2.events[0] == cm.events[0]

    def test_move_reports_sign(self):
        cm = trace_components(presets.program("ring"))
        # base point on the up leg: first disk event has sign +1
        m1, eps = move_base_point(cm, 0, +1)
        assert eps == +1
        assert m1.base_shift[0] == 1

    def test_no_disk_crossed(self):
        cm = trace_components(presets.program("u+"))
        m1, eps = move_base_point(cm, 0, +1)
        assert eps is None
        assert len(m1.events[0]) == len(cm.events[0])


class TestTransforms:
    def test_append_split_unknot(self):
        p = presets.program("trefoil")
        q = append_split_unknot(p, +1)
        cm = trace_components(q)
        assert cm.n_components == 2

    def test_reverse_component_valid(self):
        p = presets.program("fig8example")
        q = reverse_component(p, 1)
        cm = trace_components(q)
        assert cm.n_components == 2

    def test_stack(self):
        p = stack_programs(presets.program("trefoil"), presets.program("u+"))
        cm = trace_components(p)
        assert cm.n_components == 2
