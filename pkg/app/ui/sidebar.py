# app/ui/sidebar.py
import logging

import streamlit as st

from app.services.errors import QHeisError
from app.services.scalars import QParam, validate_q
import config

logger = logging.getLogger(__name__)


def render_sidebar():
    """Render the sidebar with the q parameter, the input pair and example pairs."""
    with st.sidebar:
        st.title("🧮 q-Heisenberg Explorer")
        st.markdown("Exact computations in the algebra AB - qBA = 1.")

        _render_q_selector()

        st.subheader("Elements")
        st.text_input("P", key="p_text")
        st.text_input("Q", key="q_text")
        st.caption("Use A, B, q, rationals, + - * ^ and parentheses.")

        st.subheader("Laurent windows")
        st.number_input("Window width", min_value=8, max_value=512, step=8, key="window_width")

        _render_example_pairs()


def _render_q_selector():
    """Render the q selection and store the parsed parameter in session state."""
    mode = st.radio("q", options=["Rational", "Symbolic"], horizontal=True, key="q_mode")
    if mode == "Symbolic":
        st.session_state.q = QParam.symbolic()
        return

    text = st.text_input("Value of q", key="q_value")
    try:
        q = QParam.parse(text)
        validate_q(q)
        st.session_state.q = q
    except QHeisError as e:
        logger.warning(f"Rejected q={text!r}: {str(e)}")
        st.error(str(e))
        st.session_state.q = None


def _load_example(p_text: str, q_text: str):
    st.session_state.p_text = p_text
    st.session_state.q_text = q_text


def _render_example_pairs():
    """Render clickable example pairs."""
    st.subheader("Example pairs")
    for i, (p_text, q_text) in enumerate(config.EXAMPLE_PAIRS):
        st.button(
            f"P = {p_text},  Q = {q_text}",
            key=f"example_{i}",
            on_click=_load_example,
            args=(p_text, q_text),
        )
