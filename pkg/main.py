# main.py
import logging

import streamlit as st
from app.ui.main_page import render_main_ui
from app.ui.sidebar import render_sidebar
import config

logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)


def main():
    # Page configuration
    st.set_page_config(
        page_title=config.APP_TITLE,
        page_icon=config.APP_ICON,
        layout="wide",
        initial_sidebar_state="expanded"
    )

    # Apply custom CSS
    st.markdown(config.CSS, unsafe_allow_html=True)

    # Initialize session state
    first_p, first_q = config.EXAMPLE_PAIRS[0]
    if "p_text" not in st.session_state:
        st.session_state.p_text = first_p
    if "q_text" not in st.session_state:
        st.session_state.q_text = first_q
    if "q_value" not in st.session_state:
        st.session_state.q_value = config.DEFAULT_Q if config.DEFAULT_Q != "symbolic" else "2"
    if "window_width" not in st.session_state:
        st.session_state.window_width = config.WINDOW_WIDTH

    # Render sidebar
    render_sidebar()

    # Render main UI
    render_main_ui()


if __name__ == "__main__":
    main()
