from hypothesis import strategies as st

from sofic_forge import GeneratingList

letters = st.sampled_from("abc")
words = st.text(alphabet="abc", min_size=1, max_size=4)


@st.composite
def lists(draw, max_words=4):
    ws = draw(st.lists(words, min_size=1, max_size=max_words, unique=True))
    return GeneratingList.of(*ws)


def is_sft(lst):
    from sofic_forge import sft_certificate

    return sft_certificate(lst).is_sft
