# app/ui/main_page.py
import logging
import traceback

import streamlit as st

from app.services import eliminant as elim
from app.services import laurent, spectral
from app.services.algebra import commutator
from app.services.errors import QHeisError
from app.services.expr_parser import parse_element
from app.services.scalars import to_fraction
from app.ui.components import render_check_badge, render_element_card, render_report
from app.utils.formatters import format_curves, format_element, format_kernel_report, window_frame
import config

logger = logging.getLogger(__name__)


def render_main_ui():
    """Render the main area: one tab per family of computations."""
    st.title("q-Deformed Heisenberg Algebra")

    q = st.session_state.get("q")
    if q is None:
        st.info("Choose a valid q in the sidebar to get started.")
        return

    try:
        p = parse_element(st.session_state.p_text, q, substitute_q=config.SUBSTITUTE_Q)
        q_elem = parse_element(st.session_state.q_text, q, substitute_q=config.SUBSTITUTE_Q)
    except QHeisError as e:
        st.error(f"Could not parse input: {str(e)}")
        return

    normal_tab, eliminant_tab, spectral_tab, laurent_tab = st.tabs(
        ["Normal form", "Eliminant", "Kernel & spectrum", "Laurent chains"]
    )
    with normal_tab:
        _render_normal_forms(p, q_elem)
    with eliminant_tab:
        _guarded("Eliminant computation failed", _render_eliminant, p, q_elem)
    with spectral_tab:
        _guarded("Spectral computation failed", _render_spectral, p)
    with laurent_tab:
        _guarded("Laurent computation failed", _render_laurent, p)


def _guarded(message: str, render, *args):
    """Run a render helper, turning errors into an error box with details."""
    try:
        render(*args)
    except QHeisError as e:
        st.error(f"{message}: {str(e)}")
    except Exception:
        logger.exception(message)
        st.error(message)
        with st.expander("View Error Details"):
            st.code(traceback.format_exc())


def _render_normal_forms(p, q_elem):
    render_element_card("P", p)
    render_element_card("Q", q_elem)
    bracket = commutator(p, q_elem)
    if bracket.is_zero():
        st.success("P and Q commute.")
    else:
        st.warning(f"P and Q do not commute: [P, Q] = {format_element(bracket)}")


def _render_eliminant(p, q_elem):
    force = st.checkbox("Evaluate residuals even if P and Q do not commute", key="force_verify")
    if not st.button("Compute eliminant and verify", key="run_verify"):
        return
    with st.spinner("Computing determinant..."):
        report = elim.verify(p, q_elem, force=force)
    render_report(report)
    with st.expander("Eliminant and curves as text"):
        st.code(format_curves(report.curves))


def _render_spectral(p):
    if p.q.is_symbolic:
        lower, upper = spectral.kernel_dimension_bounds(p)
        st.info(f"Symbolic q: dim ker P lies in [{lower}, {upper}].")
        return

    report = spectral.kernel_dimension(p)
    st.markdown(f"**Kernel on Laurent series:** {format_kernel_report(report)}")

    count = st.slider("Eigenvalues to sample", min_value=1, max_value=20, value=5, key="spectrum_count")
    if st.button("Sample spectrum", key="run_spectrum"):
        with st.spinner("Searching for eigenvalues..."):
            values = spectral.spectrum_sample(p, count, config.SPECTRUM_SEARCH_LIMIT)
        st.write(", ".join(str(v) for v in values))
        render_check_badge("kernel dimension within bounds", spectral.uniform_bound_check(p, values))


def _render_laurent(p):
    q = p.q
    if q.is_symbolic:
        st.info("Laurent windows need a numeric q.")
        return

    col1, col2 = st.columns(2)
    with col1:
        alpha_text = st.text_input("alpha", value="2", key="psi_alpha")
    with col2:
        s_max = st.number_input("Chain length", min_value=1, max_value=6, value=2, key="psi_s")

    alpha = to_fraction(alpha_text)
    window = laurent.default_window(int(st.session_state.window_width))
    chain = laurent.psi_chain(alpha, int(s_max), window)
    st.dataframe(window_frame(chain, [f"Psi_{s}" for s in range(1, len(chain) + 1)]), use_container_width=True)

    st.subheader("Identities")
    render_check_badge("chain relations", laurent.chain_relations_check(alpha, int(s_max), window))
    render_check_badge("collapsed identity", laurent.collapsed_identity_check(alpha, int(s_max), q, window))
    if not q.is_one:
        render_check_badge("D_q Psi identity", laurent.dq_psi_identity_check(alpha, q, window))
    if p.order:
        render_check_badge("action identity for P", laurent.action_identity_check(p, alpha, int(s_max), window))
